#include "oqa/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace oqa {

namespace {

struct KindName {
  SliceKind kind;
  const char* token;
};
constexpr KindName kKinds[] = {
    {SliceKind::CupCW, "cup_cw"},   {SliceKind::CupCCW, "cup_ccw"}, {SliceKind::CapCW, "cap_cw"},
    {SliceKind::CapCCW, "cap_ccw"}, {SliceKind::CrossPos, "xp"},    {SliceKind::CrossNeg, "xn"},
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Slice parse_slice(const std::string& tok, int line) {
  std::istringstream is(tok);
  std::string name;
  long p;
  is >> name;
  for (const auto& k : kKinds)
    if (name == k.token) {
      if (!(is >> p)) throw DiagramError("line " + std::to_string(line) + ": missing position after '" + name + "'", line);
      std::string rest;
      if (is >> rest) throw DiagramError("line " + std::to_string(line) + ": trailing text '" + rest + "'", line);
      if (p < 0 || p > 100000) throw DiagramError("line " + std::to_string(line) + ": bad position", line);
      return {k.kind, static_cast<int>(p)};
    }
  throw DiagramError("line " + std::to_string(line) + ": unknown slice '" + name + "'", line);
}

}  // namespace

const char* slice_token(SliceKind k) {
  for (const auto& x : kKinds)
    if (x.kind == k) return x.token;
  return "?";
}

bool is_cup(SliceKind k) { return k == SliceKind::CupCW || k == SliceKind::CupCCW; }
bool is_cap(SliceKind k) { return k == SliceKind::CapCW || k == SliceKind::CapCCW; }
bool is_crossing(SliceKind k) { return k == SliceKind::CrossPos || k == SliceKind::CrossNeg; }
int slice_inputs(SliceKind k) { return is_cup(k) ? 0 : 2; }
int slice_outputs(SliceKind k) { return is_cap(k) ? 0 : 2; }

MorseDiagram parse_diagram(const std::string& text) {
  MorseDiagram d;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool seen_slice = false, seen_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("boundary:", 0) == 0) {
      if (seen_slice || seen_header)
        throw DiagramError("line " + std::to_string(lineno) + ": header must come first", lineno);
      std::string v = trim(line.substr(9));
      if (v == "closed") d.boundary = Boundary::Closed;
      else if (v == "open") d.boundary = Boundary::Open;
      else throw DiagramError("line " + std::to_string(lineno) + ": unknown boundary '" + v + "'", lineno);
      seen_header = true;
      continue;
    }
    std::istringstream parts(line);
    std::string piece;
    while (std::getline(parts, piece, '/')) {
      piece = trim(piece);
      if (piece.empty()) continue;
      d.slices.push_back(parse_slice(piece, lineno));
      seen_slice = true;
    }
  }
  validate(d);
  return d;
}

MorseDiagram parse_word(const std::string& w, Boundary b) {
  return parse_diagram(std::string("boundary: ") + (b == Boundary::Open ? "open" : "closed") + "\n" + w);
}

std::string word(const MorseDiagram& d) {
  std::string s;
  for (std::size_t i = 0; i < d.slices.size(); ++i) {
    if (i) s += " / ";
    s += slice_token(d.slices[i].kind);
    s += " " + std::to_string(d.slices[i].pos);
  }
  return s;
}

std::string serialize(const MorseDiagram& d) {
  std::string s = std::string("boundary: ") + (d.boundary == Boundary::Open ? "open" : "closed") + "\n";
  for (const auto& sl : d.slices) s += std::string(slice_token(sl.kind)) + " " + std::to_string(sl.pos) + "\n";
  return s;
}

std::vector<std::vector<bool>> levels(const MorseDiagram& d) {
  std::vector<std::vector<bool>> lv;
  std::vector<bool> cur;
  if (d.boundary == Boundary::Open) cur.push_back(true);
  lv.push_back(cur);
  for (std::size_t i = 0; i < d.slices.size(); ++i) {
    const auto& s = d.slices[i];
    const int idx = static_cast<int>(i);
    auto where = "slice " + std::to_string(i) + " (" + slice_token(s.kind) + " " + std::to_string(s.pos) + "): ";
    const int w = static_cast<int>(cur.size());
    if (is_cup(s.kind)) {
      if (s.pos > w) throw DiagramError(where + "position beyond strand count " + std::to_string(w), idx);
      bool first = s.kind == SliceKind::CupCW;  // cup_cw creates (up, down)
      cur.insert(cur.begin() + s.pos, {first, !first});
    } else {
      if (s.pos + 1 >= w) throw DiagramError(where + "needs two strands, have " + std::to_string(w), idx);
      bool l = cur[s.pos], r = cur[s.pos + 1];
      auto dir = [](bool up) { return up ? "up" : "down"; };
      auto have = std::string("(") + dir(l) + "," + dir(r) + ")";
      if (is_crossing(s.kind)) {
        if (!l || !r) throw DiagramError(where + "crossing needs (up,up), has " + have, idx);
      } else {
        bool want = s.kind == SliceKind::CapCW;  // cap_cw consumes (up, down)
        if (l != want || r != !want)
          throw DiagramError(where + (want ? "needs (up,down)" : "needs (down,up)") + ", has " + have, idx);
        cur.erase(cur.begin() + s.pos, cur.begin() + s.pos + 2);
      }
    }
    lv.push_back(cur);
  }
  if (d.boundary == Boundary::Closed && !cur.empty())
    throw DiagramError("closed diagram ends with " + std::to_string(cur.size()) + " open strands", static_cast<int>(d.slices.size()));
  if (d.boundary == Boundary::Open && (cur.size() != 1 || !cur[0]))
    throw DiagramError("open diagram must end with a single upward strand", static_cast<int>(d.slices.size()));
  return lv;
}

void validate(const MorseDiagram& d) { levels(d); }

Extremum extremum_type(SliceKind k) {
  switch (k) {
    case SliceKind::CapCW: return Extremum::UMinus;
    case SliceKind::CupCW: return Extremum::DMinus;
    case SliceKind::CapCCW: return Extremum::DPlus;
    case SliceKind::CupCCW: return Extremum::UPlus;
    default: throw std::logic_error("crossing has no extremum type");
  }
}

bool clockwise(Extremum e) { return e == Extremum::UMinus || e == Extremum::DMinus; }

// ---------------------------------------------------------------- traversal

namespace {

struct Event {
  bool is_label;
  int crossing, side;
  Extremum ext;
};

struct Walker {
  const MorseDiagram& d;
  const std::vector<std::vector<bool>>& lv;
  int n;

  // Walks from seg until reaching stop (closed) or an end of the diagram.
  std::vector<Event> walk(Segment start, bool closed, std::vector<Segment>& visited) const {
    std::vector<Event> ev;
    Segment s = start;
    bool up = lv[s.level][s.pos];
    for (std::size_t guard = 0;; ++guard) {
      if (guard > 4 * (d.slices.size() + 2) * (d.slices.size() + 2)) throw std::logic_error("traversal does not close");
      visited.push_back(s);
      if (up) {
        if (s.level == n) return ev;  // top end
        const Slice& sl = d.slices[s.level];
        const int q = sl.pos;
        if (is_cup(sl.kind)) {
          s = {s.level + 1, s.pos >= q ? s.pos + 2 : s.pos};
        } else if (is_cap(sl.kind)) {
          if (s.pos == q || s.pos == q + 1) {
            ev.push_back({false, -1, -1, extremum_type(sl.kind)});
            s = {s.level, s.pos == q ? q + 1 : q};
            up = false;
          } else {
            s = {s.level + 1, s.pos > q + 1 ? s.pos - 2 : s.pos};
          }
        } else {
          if (s.pos == q || s.pos == q + 1) {
            bool left = s.pos == q;
            int side = (sl.kind == SliceKind::CrossPos) == left ? 0 : 1;
            ev.push_back({true, s.level, side, Extremum::UMinus});
            s = {s.level + 1, left ? q + 1 : q};
          } else {
            s = {s.level + 1, s.pos};
          }
        }
      } else {
        if (s.level == 0) throw std::logic_error("downward strand leaves the bottom");
        const Slice& sl = d.slices[s.level - 1];
        const int q = sl.pos;
        if (is_cup(sl.kind)) {
          if (s.pos == q || s.pos == q + 1) {
            ev.push_back({false, -1, -1, extremum_type(sl.kind)});
            s = {s.level, s.pos == q ? q + 1 : q};
            up = true;
          } else {
            s = {s.level - 1, s.pos > q + 1 ? s.pos - 2 : s.pos};
          }
        } else if (is_cap(sl.kind)) {
          s = {s.level - 1, s.pos >= q ? s.pos + 2 : s.pos};
        } else {
          s = {s.level - 1, s.pos};
        }
      }
      if (closed && up && s == start) return ev;
    }
  }
};

ComponentRecord record(const std::vector<Event>& ev, bool closed, Segment base) {
  ComponentRecord c;
  c.closed = closed;
  c.basepoint = base;
  int ud = 0, uu = 0, cw = 0, ccw = 0;
  int total = 0;
  for (const auto& e : ev) total += !e.is_label;
  for (auto it = ev.rbegin(); it != ev.rend(); ++it) {
    if (it->is_label) {
      c.labels.push_back({it->crossing, it->side, ud, uu, total - cw - ccw});
      continue;
    }
    switch (it->ext) {
      case Extremum::DPlus: ++ud; break;
      case Extremum::DMinus: --ud; break;
      case Extremum::UPlus: ++uu; break;
      case Extremum::UMinus: --uu; break;
    }
    (clockwise(it->ext) ? cw : ccw)++;
  }
  std::reverse(c.labels.begin(), c.labels.end());
  for (const auto& e : ev)
    if (!e.is_label) c.extrema.push_back(e.ext);
  if ((cw - ccw) % 2) throw std::logic_error("odd extremum balance");
  c.whitney = (cw - ccw) / 2;
  return c;
}

}  // namespace

TraversalRecord traverse(const MorseDiagram& d, const std::map<int, Segment>& basepoints) {
  const auto lv = levels(d);
  Walker w{d, lv, static_cast<int>(d.slices.size())};
  std::set<Segment> seen;
  TraversalRecord out;
  std::optional<ComponentRecord> open;
  if (d.boundary == Boundary::Open) {
    std::vector<Segment> vis;
    auto ev = w.walk({0, 0}, false, vis);
    seen.insert(vis.begin(), vis.end());
    open = record(ev, false, {0, 0});
    for (const auto& s : vis)
      if (lv[s.level][s.pos]) open->up_segments.push_back(s);
  }
  for (int k = 0; k < static_cast<int>(lv.size()); ++k)
    for (int p = 0; p < static_cast<int>(lv[k].size()); ++p) {
      Segment s{k, p};
      if (!lv[k][p] || seen.count(s)) continue;
      std::vector<Segment> vis;
      auto ev = w.walk(s, true, vis);
      seen.insert(vis.begin(), vis.end());
      std::vector<Segment> ups;
      for (const auto& v : vis)
        if (lv[v.level][v.pos]) ups.push_back(v);
      std::sort(ups.begin(), ups.end());
      ups.erase(std::unique(ups.begin(), ups.end()), ups.end());
      const int idx = static_cast<int>(out.components.size());
      Segment base = s;
      if (auto it = basepoints.find(idx); it != basepoints.end()) {
        if (!std::binary_search(ups.begin(), ups.end(), it->second))
          throw DiagramError("basepoint override is not an upward segment of component " + std::to_string(idx));
        base = it->second;
        vis.clear();
        ev = w.walk(base, true, vis);
      }
      auto rec = record(ev, true, base);
      rec.up_segments = std::move(ups);
      out.components.push_back(std::move(rec));
    }
  for (const auto& [i, s] : basepoints)
    if (i < 0 || i >= static_cast<int>(out.components.size()) || !out.components[i].closed)
      throw DiagramError("basepoint override names no closed component");
  if (open) out.components.push_back(std::move(*open));
  return out;
}

int DiagramStats::total_whitney() const { return std::accumulate(whitney.begin(), whitney.end(), 0); }

DiagramStats stats(const MorseDiagram& d) {
  DiagramStats st;
  for (const auto& s : d.slices) {
    if (s.kind == SliceKind::CrossPos) ++st.writhe;
    if (s.kind == SliceKind::CrossNeg) --st.writhe;
  }
  for (const auto& c : traverse(d).components) st.whitney.push_back(c.whitney);
  return st;
}

MorseDiagram compose_tangles(const MorseDiagram& lower, const MorseDiagram& upper) {
  if (lower.boundary != Boundary::Open || upper.boundary != Boundary::Open)
    throw DiagramError("compose_tangles needs two open diagrams");
  MorseDiagram r = lower;
  r.slices.insert(r.slices.end(), upper.slices.begin(), upper.slices.end());
  validate(r);
  return r;
}

MorseDiagram reverse_orientation(const MorseDiagram& d) {
  const auto lv = levels(d);
  MorseDiagram r;
  r.boundary = d.boundary;
  for (int i = static_cast<int>(d.slices.size()) - 1; i >= 0; --i) {
    const auto& s = d.slices[i];
    int w = static_cast<int>(std::max(lv[i].size(), lv[i + 1].size()));
    SliceKind k = s.kind;
    switch (s.kind) {
      case SliceKind::CupCW: k = SliceKind::CapCCW; break;
      case SliceKind::CupCCW: k = SliceKind::CapCW; break;
      case SliceKind::CapCW: k = SliceKind::CupCCW; break;
      case SliceKind::CapCCW: k = SliceKind::CupCW; break;
      default: break;
    }
    r.slices.push_back({k, w - 2 - s.pos});
  }
  validate(r);
  return r;
}

// ---------------------------------------------------------------- moves

namespace {

struct Pattern {
  std::vector<Slice> lhs, rhs;
};

using K = SliceKind;

std::vector<Pattern> patterns(Move m, int p) {
  const K xp = K::CrossPos, xn = K::CrossNeg;
  const K cupw = K::CupCW, cupc = K::CupCCW, capw = K::CapCW, capc = K::CapCCW;
  auto M4a = [&](K x) {
    return Pattern{{{x, p}},
                   {{cupc, p + 2}, {cupc, p + 3}, {cupw, p + 4}, {cupw, p + 5}, {x, p + 4},
                    {capc, p + 3}, {capc, p + 2}, {capw, p + 1}, {capw, p}}};
  };
  auto M4b = [&](K x) {
    return Pattern{{{x, p}},
                   {{cupw, p}, {cupw, p + 1}, {cupc, p + 2}, {cupc, p + 3}, {x, p + 4},
                    {capw, p + 5}, {capw, p + 4}, {capc, p + 3}, {capc, p + 2}}};
  };
  auto TL = [&](K x) {
    return Pattern{{{x, p}}, {{cupw, p}, {cupw, p + 3}, {x, p + 2}, {capc, p + 1}, {capc, p + 2}}};
  };
  auto TR = [&](K x) {
    return Pattern{{{x, p}}, {{cupc, p + 2}, {cupc, p + 1}, {x, p + 2}, {capw, p + 3}, {capw, p}}};
  };
  auto antiA = [&](K x, K y) {
    return Pattern{{{cupc, p}, {x, p + 1}, {capw, p + 2}, {cupw, p + 2}, {y, p + 1}, {capc, p}}, {}};
  };
  auto antiB = [&](K x, K y) {
    return Pattern{{{cupw, p + 2}, {y, p + 1}, {capc, p}, {cupc, p}, {x, p + 1}, {capw, p + 2}}, {}};
  };
  switch (m) {
    case Move::Commute: return {};
    case Move::M1a: return {{{{cupc, p + 1}, {capw, p}}, {}}, {{{cupw, p + 1}, {capc, p}}, {}}};
    case Move::M1b: return {{{{cupw, p}, {capc, p + 1}}, {}}, {{{cupc, p}, {capw, p + 1}}, {}}};
    case Move::M2: return {{{{xp, p}, {xn, p}}, {}}};
    case Move::M2rev: return {{{{xn, p}, {xp, p}}, {}}};
    case Move::M2antiA: return {antiA(xp, xn)};
    case Move::M2antiArev: return {antiA(xn, xp)};
    case Move::M2antiB: return {antiB(xp, xn)};
    case Move::M2antiBrev: return {antiB(xn, xp)};
    case Move::M3: return {{{{xp, p}, {xp, p + 1}, {xp, p}}, {{xp, p + 1}, {xp, p}, {xp, p + 1}}}};
    case Move::M3rev: return {{{{xn, p}, {xn, p + 1}, {xn, p}}, {{xn, p + 1}, {xn, p}, {xn, p + 1}}}};
    case Move::M4a: return {M4a(xp)};
    case Move::M4b: return {M4b(xp)};
    case Move::M4rev_a: return {M4a(xn)};
    case Move::M4rev_b: return {M4b(xn)};
    case Move::TwistL: return {TL(xp)};
    case Move::TwistR: return {TR(xp)};
    case Move::TwistLrev: return {TL(xn)};
    case Move::TwistRrev: return {TR(xn)};
  }
  return {};
}

bool window_matches(const MorseDiagram& d, int at, const std::vector<Slice>& pat) {
  if (pat.empty() || at < 0 || at + pat.size() > d.slices.size()) return false;
  return std::equal(pat.begin(), pat.end(), d.slices.begin() + at);
}

MorseDiagram replaced(const MorseDiagram& d, int at, std::size_t len, const std::vector<Slice>& with) {
  MorseDiagram r = d;
  r.slices.erase(r.slices.begin() + at, r.slices.begin() + at + len);
  r.slices.insert(r.slices.begin() + at, with.begin(), with.end());
  return r;
}

bool valid(const MorseDiagram& d) {
  try {
    validate(d);
    return true;
  } catch (const DiagramError&) {
    return false;
  }
}

std::optional<std::pair<MorseDiagram, bool>> try_move(const MorseDiagram& d, Move m, int at, int pos) {
  if (at < 0 || pos < 0 || at > static_cast<int>(d.slices.size())) return std::nullopt;
  if (m == Move::Commute) {
    if (at + 1 >= static_cast<int>(d.slices.size())) return std::nullopt;
    Slice A = d.slices[at], B = d.slices[at + 1];
    const int a = A.pos, b = B.pos, ka = slice_inputs(A.kind), ka2 = slice_outputs(A.kind);
    const int kb = slice_inputs(B.kind), kb2 = slice_outputs(B.kind);
    if (b + kb <= a) {
      A.pos = a + (kb2 - kb);
    } else if (b >= a + ka2) {
      B.pos = b - (ka2 - ka);
    } else {
      return std::nullopt;
    }
    MorseDiagram r = d;
    r.slices[at] = B;
    r.slices[at + 1] = A;
    if (!valid(r)) return std::nullopt;
    return std::pair{r, false};
  }
  const auto ps = patterns(m, pos);
  for (const auto& pt : ps) {
    if (window_matches(d, at, pt.lhs)) {
      auto r = replaced(d, at, pt.lhs.size(), pt.rhs);
      if (valid(r)) return std::pair{r, false};
    }
    if (window_matches(d, at, pt.rhs)) {
      auto r = replaced(d, at, pt.rhs.size(), pt.lhs);
      if (valid(r)) return std::pair{r, false};
    }
  }
  for (const auto& pt : ps) {
    if (!pt.rhs.empty() && !pt.lhs.empty()) continue;
    const auto& side = pt.lhs.empty() ? pt.rhs : pt.lhs;
    auto r = replaced(d, at, 0, side);
    if (valid(r)) return std::pair{r, true};
  }
  return std::nullopt;
}

}  // namespace

const std::vector<Move>& all_moves() {
  static const std::vector<Move> v = {
      Move::Commute, Move::M1a,     Move::M1b,     Move::M2,         Move::M2rev,
      Move::M2antiA, Move::M2antiArev, Move::M2antiB, Move::M2antiBrev, Move::M3,
      Move::M3rev,   Move::M4a,     Move::M4b,     Move::M4rev_a,    Move::M4rev_b,
      Move::TwistL,  Move::TwistR,  Move::TwistLrev, Move::TwistRrev};
  return v;
}

const char* move_name(Move m) {
  switch (m) {
    case Move::Commute: return "Commute";
    case Move::M1a: return "M1a";
    case Move::M1b: return "M1b";
    case Move::M2: return "M2";
    case Move::M2rev: return "M2rev";
    case Move::M2antiA: return "M2anti_a";
    case Move::M2antiArev: return "M2anti_a_rev";
    case Move::M2antiB: return "M2anti_b";
    case Move::M2antiBrev: return "M2anti_b_rev";
    case Move::M3: return "M3";
    case Move::M3rev: return "M3rev";
    case Move::M4a: return "M4a";
    case Move::M4b: return "M4b";
    case Move::M4rev_a: return "M4rev_a";
    case Move::M4rev_b: return "M4rev_b";
    case Move::TwistL: return "TwistL";
    case Move::TwistR: return "TwistR";
    case Move::TwistLrev: return "TwistL_rev";
    case Move::TwistRrev: return "TwistR_rev";
  }
  return "?";
}

std::optional<Move> move_from_name(const std::string& s) {
  for (Move m : all_moves())
    if (s == move_name(m)) return m;
  return std::nullopt;
}

MorseDiagram apply_move(const MorseDiagram& d, Move m, int at, int pos) {
  auto r = try_move(d, m, at, pos);
  if (!r)
    throw DiagramError(std::string(move_name(m)) + ": pattern mismatch at slice " + std::to_string(at) +
                           ", position " + std::to_string(pos),
                       at);
  return r->first;
}

std::vector<MoveSite> move_sites(const MorseDiagram& d, bool include_insertions) {
  std::vector<MoveSite> out;
  const auto lv = levels(d);
  const int n = static_cast<int>(d.slices.size());
  for (Move m : all_moves())
    for (int at = 0; at <= n; ++at) {
      int maxpos = m == Move::Commute ? 0 : static_cast<int>(lv[at].size());
      for (int pos = 0; pos <= maxpos; ++pos) {
        auto r = try_move(d, m, at, pos);
        if (!r || (r->second && !include_insertions)) continue;
        out.push_back({m, at, pos, r->second});
      }
    }
  return out;
}

// ---------------------------------------------------------------- builtins

namespace {

std::string repeat(const std::string& w, int m) {
  std::string s;
  for (int i = 0; i < m; ++i) s += (i ? " / " : "") + w;
  return s;
}

std::string join(std::initializer_list<std::string> parts) {
  std::string s;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!s.empty()) s += " / ";
    s += p;
  }
  return s;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"identity", "curl",         "curl_op",   "trefoil_tangle", "trefoil_knot",
          "hopf",     "hopf_mirror",  "figure8_knot", "unknot_cw",   "unknot_ccw",
          "c_r_plus", "c_r_minus",    "c_l_plus",  "c_l_minus"};
}

MorseDiagram builtin(const std::string& name, int m) {
  const auto O = Boundary::Open, C = Boundary::Closed;
  if (m < 0) throw DiagramError("builtin: m must be non-negative");
  if (name == "identity") return parse_word("", O);
  if (name == "curl") return parse_word("cup_cw 1 / xp 0 / cap_cw 1", O);
  if (name == "curl_op") return parse_word("cup_ccw 0 / xp 1 / cap_ccw 0", O);
  if (name == "trefoil_tangle") return parse_word("cup_ccw 0 / xp 1 / xp 1 / xp 1 / cap_ccw 0", O);
  if (name == "trefoil_knot")
    return parse_word("cup_ccw 0 / cup_cw 2 / xp 1 / xp 1 / xp 1 / cap_cw 2 / cap_ccw 0", C);
  if (name == "hopf") return parse_word("cup_ccw 0 / cup_cw 2 / xp 1 / xp 1 / cap_cw 2 / cap_ccw 0", C);
  if (name == "hopf_mirror") return parse_word("cup_ccw 0 / cup_cw 2 / xn 1 / xn 1 / cap_cw 2 / cap_ccw 0", C);
  if (name == "figure8_knot")
    return parse_word(
        "cup_cw 0 / cup_cw 1 / cup_cw 2 / xp 0 / xn 1 / xp 0 / xn 1 / cap_cw 2 / cap_cw 1 / cap_cw 0", C);
  if (name == "unknot_cw") return parse_word("cup_cw 0 / cap_cw 0", C);
  if (name == "unknot_ccw") return parse_word("cup_ccw 0 / cap_ccw 0", C);
  if (name == "c_r_plus") return parse_word(join({"cup_ccw 0", repeat("cup_cw 2 / xp 1 / cap_cw 2", m), "cap_ccw 0"}), C);
  if (name == "c_r_minus") return parse_word(join({"cup_ccw 0", repeat("cup_cw 2 / xn 1 / cap_cw 2", m), "cap_ccw 0"}), C);
  if (name == "c_l_plus") return parse_word(join({"cup_cw 0", repeat("cup_ccw 0 / xp 1 / cap_ccw 0", m), "cap_cw 0"}), C);
  if (name == "c_l_minus") return parse_word(join({"cup_cw 0", repeat("cup_ccw 0 / xn 1 / cap_ccw 0", m), "cap_cw 0"}), C);
  throw DiagramError("unknown builtin '" + name + "'");
}

MorseDiagram builtin_spec(const std::string& spec) {
  auto cut = spec.find_first_of("(:");
  if (cut == std::string::npos) return builtin(spec);
  std::string name = spec.substr(0, cut), arg = spec.substr(cut + 1);
  if (!arg.empty() && arg.back() == ')') arg.pop_back();
  try {
    std::size_t used = 0;
    int m = std::stoi(arg, &used);
    if (used != arg.size()) throw std::invalid_argument("trailing");
    return builtin(name, m);
  } catch (const std::logic_error&) {
    throw DiagramError("bad builtin argument in '" + spec + "'");
  }
}

}  // namespace oqa
