#include "oqa/homfly_bridge.hpp"

#include <mutex>
#include <set>
#include <unordered_map>

namespace oqa {

int crossing_sign(SliceKind k) {
  if (!is_crossing(k)) throw std::invalid_argument("crossing_sign: not a crossing");
  return (k == SliceKind::CrossPos) == kCrossPosIsSkeinPositive ? 1 : -1;
}

int skein_writhe(const MorseDiagram& d) {
  int w = 0;
  for (const auto& s : d.slices)
    if (is_crossing(s.kind)) w += crossing_sign(s.kind);
  return w;
}

// ---------------------------------------------------------------- SkeinPoly

SkeinPoly::SkeinPoly(long c) {
  if (c) t_[{0, 0}] = c;
}

SkeinPoly SkeinPoly::monomial(int ae, int ze, long c) {
  SkeinPoly p;
  if (c) p.t_[{ae, ze}] = c;
  return p;
}

void SkeinPoly::add(Key k, const mpz_class& c) {
  auto& slot = t_[k];
  slot += c;
  if (slot == 0) t_.erase(k);
}

SkeinPoly SkeinPoly::operator+(const SkeinPoly& o) const {
  SkeinPoly r = *this;
  for (const auto& [k, c] : o.t_) r.add(k, c);
  return r;
}

SkeinPoly SkeinPoly::operator-(const SkeinPoly& o) const {
  SkeinPoly r = *this;
  for (const auto& [k, c] : o.t_) r.add(k, -c);
  return r;
}

SkeinPoly SkeinPoly::operator*(const SkeinPoly& o) const {
  SkeinPoly r;
  for (const auto& [k1, c1] : t_)
    for (const auto& [k2, c2] : o.t_) r.add({k1.first + k2.first, k1.second + k2.second}, c1 * c2);
  return r;
}

SkeinPoly SkeinPoly::pow(unsigned k) const {
  SkeinPoly r(1);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

SkeinPoly SkeinPoly::at_alpha_one() const {
  SkeinPoly r;
  for (const auto& [k, c] : t_) r.add({0, k.second}, c);
  return r;
}

Scalar SkeinPoly::evaluate(const Scalar& alpha, const Scalar& z) const {
  Scalar s;
  for (const auto& [k, c] : t_) s += Scalar(mpq_class(c)) * alpha.pow(k.first) * z.pow(k.second);
  return s;
}

std::string SkeinPoly::str() const {
  if (t_.empty()) return "0";
  std::vector<std::pair<Key, mpz_class>> v(t_.begin(), t_.end());
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
    if (x.first.second != y.first.second) return x.first.second > y.first.second;
    return x.first.first > y.first.first;
  });
  auto power = [](const char* var, int e) {
    std::string s = var;
    if (e != 1) s += "^" + std::to_string(e);
    return s;
  };
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto [k, c] = v[i];
    bool neg = c < 0;
    mpz_class mag = neg ? mpz_class(-c) : c;
    if (i == 0) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    std::vector<std::string> parts;
    if (mag != 1 || (k.first == 0 && k.second == 0)) parts.push_back(mag.get_str());
    if (k.first) parts.push_back(power("alpha", k.first));
    if (k.second) parts.push_back(power("z", k.second));
    for (std::size_t j = 0; j < parts.size(); ++j) out += (j ? "*" : "") + parts[j];
  }
  return out;
}

// ---------------------------------------------------------------- skein recursion

namespace {

std::mutex cache_mu;
std::unordered_map<std::string, SkeinPoly> cache;

SkeinPoly delta() {
  return SkeinPoly::monomial(1, -1) - SkeinPoly::monomial(-1, -1);
}

SkeinPoly homfly_rec(const MorseDiagram& d) {
  const std::string key = word(d);
  {
    std::lock_guard<std::mutex> g(cache_mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const int over_side = kCrossPosIsSkeinPositive ? 0 : 1;
  const auto rec = traverse(d);
  std::set<int> seen;
  int bad = -1;
  for (const auto& c : rec.components) {
    for (const auto& l : c.labels) {
      if (!seen.insert(l.crossing).second) continue;
      if (l.side != over_side) {
        bad = l.crossing;
        break;
      }
    }
    if (bad >= 0) break;
  }
  SkeinPoly h;
  if (bad < 0) {
    // descending: an unlink up to regular isotopy
    const int w = skein_writhe(d);
    const int comps = static_cast<int>(rec.components.size());
    h = SkeinPoly::monomial(w, 0) * (comps > 0 ? delta().pow(comps - 1) : SkeinPoly(1));
  } else {
    MorseDiagram sw = d, sm = d;
    auto& k = sw.slices[bad].kind;
    k = k == SliceKind::CrossPos ? SliceKind::CrossNeg : SliceKind::CrossPos;
    sm.slices.erase(sm.slices.begin() + bad);
    const SkeinPoly z = SkeinPoly::monomial(0, 1);
    // H(L+) = H(L-) + z H(L0) and H(L-) = H(L+) - z H(L0)
    if (crossing_sign(d.slices[bad].kind) > 0) h = homfly_rec(sw) + z * homfly_rec(sm);
    else h = homfly_rec(sw) - z * homfly_rec(sm);
  }
  std::lock_guard<std::mutex> g(cache_mu);
  cache.emplace(key, h);
  return h;
}

}  // namespace

SkeinPoly homfly(const MorseDiagram& d) {
  if (d.boundary != Boundary::Closed) throw std::invalid_argument("homfly needs a closed diagram");
  validate(d);
  return homfly_rec(d);
}

SkeinPoly conway(const MorseDiagram& d) { return homfly(d).at_alpha_one(); }

void clear_skein_cache() {
  std::lock_guard<std::mutex> g(cache_mu);
  cache.clear();
}

// ---------------------------------------------------------------- closed forms

int SingleBlockContext::eta_plus(int l, int m) const {
  int c = 0;
  for (int i = l + 1; i <= m; ++i) c += same[i - 1];
  return c;
}

int SingleBlockContext::eta_minus(int l, int m) const { return (m - l) - eta_plus(l, m); }

Scalar SingleBlockContext::omega_sq(int i, const Scalar& x) const {
  const int e = eta_plus(0, i) - eta_minus(0, i);
  return -(-x).pow(same[i - 1] ? -1 : 0) * x.pow(e);
}

MnParams single_block_params(int n, const Scalar& a, const Scalar& sbc, const std::vector<bool>& same,
                         const PairTable& x) {
  if (n < 1 || static_cast<int>(same.size()) != n || !same[0])
    throw std::invalid_argument("single_block_params: need n >= 1 entries with a_1 = a");
  const Scalar bc = sbc * sbc;
  MnParams p;
  p.n = n;
  p.blocks.emplace_back();
  for (int i = 1; i <= n; ++i) p.blocks[0].push_back(i);
  p.bc = {bc};
  SingleBlockContext shape;
  shape.n = n;
  shape.same = same;
  const Scalar r = a * a / bc;
  for (int i = 1; i <= n; ++i) {
    p.a.push_back(same[i - 1] ? a : -bc / a);
    p.omega_sq.push_back(shape.omega_sq(i, r));
    for (int l = i + 1; l <= n; ++l) {
      auto it = x.find({i, l});
      if (it == x.end() || it->second.is_zero()) throw std::invalid_argument("single_block_params: missing x entry");
      p.off[{i, l}] = it->second;
      p.off[{l, i}] = bc / it->second;
    }
  }
  return p;
}

SingleBlockContext single_block_context(const MnParams& p, const Scalar& sbc, SymbolTable& st) {
  if (p.blocks.size() != 1) throw std::invalid_argument("closed forms need a single block (one rho-component)");
  SingleBlockContext c;
  c.n = p.n;
  for (int i = 0; i < p.n; ++i)
    if (p.blocks[0][i] != i + 1) throw std::invalid_argument("closed forms need the block ordered 1..n");
  const Scalar bc = p.bc[0];
  if (sbc * sbc != bc) throw std::invalid_argument("sbc^2 differs from bc");
  c.a = p.a[0];
  c.sbc = sbc;
  c.q = c.a / sbc;
  c.r = c.a * c.a / bc;
  for (int i = 0; i < p.n; ++i) {
    if (p.a[i] == c.a) c.same.push_back(true);
    else if (p.a[i] == -bc / c.a) c.same.push_back(false);
    else throw std::invalid_argument("a_" + std::to_string(i + 1) + " is neither a nor -bc/a");
    c.a_i.push_back(p.a[i]);
  }
  for (int i = 1; i <= p.n; ++i)
    if (p.omega_sq[i - 1] != c.omega_sq(i, c.r))
      throw std::invalid_argument("omega_" + std::to_string(i) + "^2 differs from the closed form");
  c.params = p;
  c.structure = build_from_params(p, st);
  c.trace = matrix_trace(p.n);
  for (int i = 1; i <= p.n; ++i) {
    c.tr_g += p.omega_sq[i - 1];
    c.tr_g_inv += p.omega_sq[i - 1].inverse();
  }
  const int e = c.eta();
  c.hbar = c.r.pow(e) / c.r;
  c.rho_norm = c.q / c.q.pow(e);
  c.kappa = c.rho_norm * c.tr_g;

  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("closed-form identity fails: ") + what);
  };
  require(c.tr_g == apply_trace(c.trace, *c.structure.twist), "Tr G");
  if (c.r != Scalar(1)) require(c.tr_g * (1 - c.r) == 1 - c.r.pow(e), "Tr G (1 - r)");
  if (!c.tr_g_inv.is_zero()) require(c.tr_g / c.tr_g_inv == c.hbar, "Tr G / Tr G^-1");
  require(c.tr_g.is_zero() == c.tr_g_inv.is_zero(), "Tr G and Tr G^-1 vanish together");
  require(c.kappa == c.tr_g_inv / c.rho_norm, "kappa");
  return c;
}

const char* family_builtin(CurlFamily f) {
  switch (f) {
    case CurlFamily::RPlus: return "c_r_plus";
    case CurlFamily::RMinus: return "c_r_minus";
    case CurlFamily::LPlus: return "c_l_plus";
    case CurlFamily::LMinus: return "c_l_minus";
  }
  return "?";
}

Scalar curl_family_value(const SingleBlockContext& c, CurlFamily f, int m) {
  switch (f) {
    case CurlFamily::RPlus: return (c.a * c.hbar).pow(m) * c.tr_g_inv;
    case CurlFamily::LMinus: return (c.a * c.hbar).pow(-m) * c.tr_g;
    case CurlFamily::LPlus: return c.a.pow(m) * c.tr_g;
    case CurlFamily::RMinus: return c.a.pow(-m) * c.tr_g_inv;
  }
  return Scalar(0);
}

IdentifyReport identify_F(const SingleBlockContext& c, const MorseDiagram& d, const Scalar& f) {
  if (d.boundary != Boundary::Closed) throw std::invalid_argument("identify_F needs a closed diagram");
  IdentifyReport rep;
  auto st = stats(d);
  rep.writhe = skein_writhe(d);
  rep.wd = st.total_whitney();
  rep.lhs = f;
  const Scalar zq = c.q - c.q.inverse();
  const Scalar lead = c.a.pow(rep.writhe) * c.q.pow(-rep.writhe);
  if (c.tr_g.is_zero()) {
    rep.alexander_branch = true;
    rep.poly = conway(d);
    rep.rhs = lead * rep.poly.evaluate(Scalar(1), zq);
  } else {
    rep.poly = homfly(d);
    rep.rhs = lead * c.kappa * c.rho_norm.pow(-rep.wd) * rep.poly.evaluate(c.q.pow(c.eta()), zq);
  }
  rep.pass = rep.lhs == rep.rhs;
  return rep;
}

MorseDiagram close_left(const MorseDiagram& t) {
  if (t.boundary != Boundary::Open) throw std::invalid_argument("close_left needs an open diagram");
  MorseDiagram c;
  c.boundary = Boundary::Closed;
  c.slices.push_back({SliceKind::CupCCW, 0});
  for (auto s : t.slices) {
    s.pos += 1;
    c.slices.push_back(s);
  }
  c.slices.push_back({SliceKind::CapCCW, 0});
  validate(c);
  return c;
}

OpenIdentifyReport identify_open(const SingleBlockContext& c, const MorseDiagram& t, const AlgebraElement& w) {
  if (t.boundary != Boundary::Open) throw std::invalid_argument("identify_open needs an open diagram");
  if (traverse(t).components.size() != 1) throw std::invalid_argument("identify_open needs a tangle without loops");
  OpenIdentifyReport rep;
  const auto cl = close_left(t);
  rep.writhe = skein_writhe(t);
  rep.wd = stats(t).total_whitney();
  rep.lhs = w;
  const Scalar zq = c.q - c.q.inverse();
  Scalar coef = c.a.pow(rep.writhe) * c.q.pow(-rep.writhe) * c.rho_norm.pow(-rep.wd);
  rep.alexander_branch = c.tr_g.is_zero();
  if (rep.alexander_branch) {
    rep.poly = conway(cl);
    coef *= rep.poly.evaluate(Scalar(1), zq);
  } else {
    rep.poly = homfly(cl);
    coef *= rep.poly.evaluate(c.q.pow(c.eta()), zq);
  }
  const auto& s = c.structure;
  const auto& A = s.algebra;
  AlgebraElement g = AlgebraElement::one(A);
  for (int k = 0; k < std::abs(rep.wd); ++k) g = s.reduce(mul(A, g, rep.wd > 0 ? *s.twist : *s.twist_inv));
  rep.rhs = s.reduce(g.scaled(s.reduce(coef)));
  rep.pass = s.reduce(rep.lhs) == rep.rhs;
  return rep;
}

SkeinTriple skein_triple(const MorseDiagram& d, int k) {
  if (k < 0 || k >= static_cast<int>(d.slices.size()) || !is_crossing(d.slices[k].kind))
    throw std::invalid_argument("skein_triple: slice " + std::to_string(k) + " is not a crossing");
  SkeinTriple t{d, d, d};
  t.pos.slices[k].kind = SliceKind::CrossPos;
  t.neg.slices[k].kind = SliceKind::CrossNeg;
  t.zero.slices.erase(t.zero.slices.begin() + k);
  validate(t.zero);
  return t;
}

SkeinReport skein_triple_check(const SingleBlockContext& c, const MorseDiagram& d1, const MorseDiagram& d2,
                               const MorseDiagram& d0) {
  auto fail = [](const std::string& m) { throw std::invalid_argument("not a skein triple: " + m); };
  if (d1.boundary != d2.boundary || d1.boundary != d0.boundary) fail("boundaries differ");
  if (d1.slices.size() != d2.slices.size() || d0.slices.size() + 1 != d1.slices.size()) fail("lengths differ");
  int site = -1;
  for (std::size_t i = 0; i < d1.slices.size(); ++i)
    if (!(d1.slices[i] == d2.slices[i])) {
      if (site >= 0) fail("more than one differing slice");
      site = static_cast<int>(i);
    }
  if (site < 0) fail("no differing slice");
  const Slice s1 = d1.slices[site], s2 = d2.slices[site];
  if (!is_crossing(s1.kind) || !is_crossing(s2.kind) || s1.pos != s2.pos) fail("site is not a crossing switch");
  MorseDiagram smoothed = d1;
  smoothed.slices.erase(smoothed.slices.begin() + site);
  if (!(smoothed == d0)) fail("third diagram is not the smoothing");
  const bool first_pos = crossing_sign(s1.kind) > 0;
  const MorseDiagram& lp = first_pos ? d1 : d2;
  const MorseDiagram& lm = first_pos ? d2 : d1;
  auto g = [&](const MorseDiagram& d) {
    return c.sbc.pow(-skein_writhe(d)) * evaluate_link(c.structure, d, c.trace);
  };
  SkeinReport r;
  r.g_plus = g(lp);
  r.g_minus = g(lm);
  r.g_zero = g(d0);
  r.pass = r.g_plus - r.g_minus == (c.q - c.q.inverse()) * r.g_zero;
  return r;
}

}  // namespace oqa
