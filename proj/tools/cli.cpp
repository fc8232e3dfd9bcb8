#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "oqa/homfly_bridge.hpp"
#include "oqa/invariant.hpp"
#include "oqa/structure_io.hpp"

namespace oqa::cli {

using nlohmann::json;

namespace {

struct Config {
  std::string structure, format = "text";
  std::vector<std::string> diagrams, binds;
  unsigned seed = 0;
  int steps = 20;
  bool full = false;
};

// exit code 1 with a message; input problems use InputError instead
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

BindingTexts parse_binds(const std::vector<std::string>& binds) {
  BindingTexts out;
  for (const auto& b : binds) {
    auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == b.size())
      throw InputError("--bind expects name=value, got '" + b + "'");
    out[b.substr(0, eq)] = b.substr(eq + 1);
  }
  return out;
}

MorseDiagram load_diagram(const std::string& spec) {
  if (spec.starts_with("builtin:")) return builtin_spec(spec.substr(8));
  std::ifstream in(spec);
  if (!in) throw InputError("cannot open diagram " + spec);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_diagram(ss.str());
}

LoadedStructure need_structure(const Config& c) {
  if (c.structure.empty()) throw InputError("--structure is required");
  return load_structure_file(c.structure, parse_binds(c.binds));
}

const MorseDiagram& need_one_diagram(const Config& c, std::vector<MorseDiagram>& store) {
  if (c.diagrams.size() != 1) throw InputError("exactly one --diagram is required");
  store.push_back(load_diagram(c.diagrams[0]));
  return store.back();
}

void emit(const Config& c, std::ostream& out, const json& j, const std::string& text) {
  if (c.format == "json") out << j.dump(2) << "\n";
  else out << text;
}

json whitney_json(const DiagramStats& s) { return json(s.whitney); }

// ---------------------------------------------------------------- commands

int cmd_check_axioms(const Config& c, std::ostream& out) {
  auto L = need_structure(c);
  auto rep = check_axioms(L.structure, c.full);
  json j{{"structure", L.structure.name}, {"qa1", rep.qa1}, {"qa2", rep.qa2}, {"qa3", rep.qa3}, {"ok", rep.ok()}};
  json w = json::array();
  std::ostringstream t;
  t << "structure " << L.structure.name << "\n";
  t << "qa1 " << (rep.qa1 ? "ok" : "FAIL") << "\nqa2 " << (rep.qa2 ? "ok" : "FAIL") << "\nqa3 "
    << (rep.qa3 ? "ok" : "FAIL") << "\n";
  for (const auto& f : rep.witnesses) {
    w.push_back({{"axiom", f.axiom}, {"detail", f.detail}});
    t << "  " << f.axiom << ": " << f.detail << "\n";
  }
  j["witnesses"] = w;
  if (L.params) {
    auto cls = classify_params(*L.params);
    json cj = json::array();
    for (const auto& cl : cls.clauses) {
      cj.push_back({{"clause", cl.clause}, {"pass", cl.pass}, {"detail", cl.detail}});
      t << "clause " << cl.clause << " " << (cl.pass ? "ok" : "FAIL") << (cl.detail.empty() ? "" : ": " + cl.detail)
        << "\n";
    }
    j["classification"] = cj;
  }
  emit(c, out, j, t.str());
  return rep.ok() ? 0 : 1;
}

int cmd_show(const Config& c, std::ostream& out) {
  auto L = need_structure(c);
  out << structure_to_json(L.structure, L.symbols, L.trace).dump(2) << "\n";
  return 0;
}

int cmd_invariant(const Config& c, std::ostream& out) {
  auto L = need_structure(c);
  std::vector<MorseDiagram> store;
  const auto& d = need_one_diagram(c, store);
  validate(d);
  const auto st = stats(d);
  json j{{"diagram", word(d)}, {"algebra", L.structure.algebra.name}, {"writhe", st.writhe},
         {"whitney", whitney_json(st)}};
  std::ostringstream t;
  if (d.boundary == Boundary::Closed) {
    if (!L.structure.twist)
      throw CheckFailure("closed diagrams need a structure with a twist element G (G invertible, fixed by t_d and t_u, "
                         "conjugation by G equal to t_d o t_u)");
    if (L.trace.empty()) throw InputError("this structure has no trace; add a \"trace\" vector");
    auto v = evaluate_link(L.structure, d, L.trace);
    j["value"] = v.str(L.symbols);
    t << v.str(L.symbols) << "\n";
  } else {
    EvalOptions opt;
    opt.trace = L.trace;
    auto w = evaluate_tangle(L.structure, d, opt);
    j["value"] = element_to_json(L.structure.algebra, w, L.symbols);
    bool any = false;
    for (int k = 0; k < L.structure.algebra.dim; ++k) {
      if (w[k].is_zero()) continue;
      t << L.structure.algebra.labels[k] << ": " << w[k].str(L.symbols) << "\n";
      any = true;
    }
    if (!any) t << "0\n";
  }
  emit(c, out, j, t.str());
  return 0;
}

int cmd_poly(const Config& c, std::ostream& out, bool is_homfly) {
  std::vector<MorseDiagram> store;
  const auto& d = need_one_diagram(c, store);
  if (d.boundary != Boundary::Closed) throw InputError("polynomials need a closed diagram");
  auto p = is_homfly ? homfly(d) : conway(d);
  json j{{"diagram", word(d)}, {is_homfly ? "homfly" : "conway", p.str()}, {"writhe", skein_writhe(d)}};
  emit(c, out, j, p.str() + "\n");
  return 0;
}

// T when d is cup_ccw 0 / T shifted right / cap_ccw 0 with T a single open strand.
std::optional<MorseDiagram> open_left(const MorseDiagram& d) {
  const auto& s = d.slices;
  if (s.size() < 2 || s.front() != Slice{SliceKind::CupCCW, 0} || s.back() != Slice{SliceKind::CapCCW, 0})
    return std::nullopt;
  MorseDiagram t;
  t.boundary = Boundary::Open;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i].pos < 1) return std::nullopt;
    t.slices.push_back({s[i].kind, s[i].pos - 1});
  }
  try {
    validate(t);
  } catch (const DiagramError&) {
    return std::nullopt;
  }
  if (traverse(t).components.size() != 1) return std::nullopt;
  return t;
}

int cmd_verify_skein(const Config& c, std::ostream& out) {
  auto L = need_structure(c);
  if (!L.single_block) throw InputError("verify-skein needs a structure of kind single_block");
  const auto& ctx = *L.single_block;
  const auto& st = L.symbols;
  std::vector<std::string> names = c.diagrams;
  if (names.empty())
    names = {"builtin:unknot_ccw", "builtin:hopf", "builtin:trefoil_knot", "builtin:figure8_knot"};
  // homogeneity is only meaningful while a and sbc are free symbols
  const auto ia = st.find("a"), is = st.find("sbc");
  const bool symbolic = ia && is && ctx.a == Scalar::var(*ia) && ctx.sbc == Scalar::var(*is);
  const bool alex = ctx.tr_g.is_zero();
  json j{{"n", ctx.n}, {"alexander_branch", alex}, {"tr_g", ctx.tr_g.str(st)}, {"tr_g_inv", ctx.tr_g_inv.str(st)}};
  json rows = json::array();
  std::ostringstream t;
  t << "n=" << ctx.n << " Tr G = " << ctx.tr_g.str(st) << (alex ? " (Alexander branch)" : "") << "\n";
  bool all = true;
  for (const auto& name : names) {
    auto d = load_diagram(name);
    if (d.boundary != Boundary::Closed) throw InputError(name + ": verify-skein needs closed diagrams");
    json row{{"diagram", name}};
    const Scalar f = evaluate_link(ctx.structure, d, ctx.trace);
    auto id = identify_F(ctx, d, f);
    row["identify"] = {{"pass", id.pass}, {"lhs", id.lhs.str(st)}, {"rhs", id.rhs.str(st)}, {"poly", id.poly.str()},
                       {"writhe", id.writhe}, {"wd", id.wd}};
    all = all && id.pass;
    t << name << "\n  identify " << (id.pass ? "ok" : "FAIL") << "  " << (alex ? "conway " : "homfly ")
      << id.poly.str() << "\n";
    if (!id.pass) t << "    F   = " << id.lhs.str(st) << "\n    rhs = " << id.rhs.str(st) << "\n";
    if (alex) {
      if (auto open = open_left(d)) {
        auto r = identify_open(ctx, *open, evaluate_tangle(ctx.structure, *open, {}));
        row["cut_open"] = {{"pass", r.pass}, {"tangle", word(*open)}};
        all = all && r.pass;
        t << "  cut-open " << (r.pass ? "ok" : "FAIL") << "  (" << (open->slices.empty() ? "identity" : word(*open)) << ")\n";
      }
    }
    json sk = json::array();
    for (int k = 0; k < static_cast<int>(d.slices.size()); ++k) {
      if (!is_crossing(d.slices[k].kind)) continue;
      auto tr = skein_triple(d, k);
      auto r = skein_triple_check(ctx, tr.pos, tr.neg, tr.zero);
      sk.push_back({{"slice", k}, {"pass", r.pass}});
      all = all && r.pass;
      t << "  skein at slice " << k << " " << (r.pass ? "ok" : "FAIL") << "\n";
    }
    row["skein"] = sk;
    if (symbolic) {
      auto deg = laurent_homogeneous_degree(f, {*ia, *is});
      // zero is homogeneous of every degree
      const bool ok = f.is_zero() || (deg && *deg == stats(d).writhe);
      row["homogeneous"] = {{"pass", ok}, {"degree", deg ? json(*deg) : json(nullptr)}};
      all = all && ok;
      t << "  homogeneous " << (ok ? "ok" : "FAIL") << " degree " << (deg ? std::to_string(*deg) : "-") << "\n";
    }
    rows.push_back(row);
  }
  j["diagrams"] = rows;
  j["pass"] = all;
  t << (all ? "all checks pass" : "some checks FAIL") << "\n";
  emit(c, out, j, t.str());
  return all ? 0 : 1;
}

int cmd_check_moves(const Config& c, std::ostream& out) {
  auto L = need_structure(c);
  std::vector<MorseDiagram> store;
  MorseDiagram d = need_one_diagram(c, store);
  validate(d);
  const bool closed = d.boundary == Boundary::Closed;
  if (closed && !L.structure.twist) throw CheckFailure("closed diagrams need a structure with a twist element G");
  auto value = [&](const MorseDiagram& e) -> std::string {
    if (closed) return evaluate_link(L.structure, e, L.trace).str(L.symbols);
    EvalOptions opt;
    opt.trace = L.trace;
    return element_to_json(L.structure.algebra, evaluate_tangle(L.structure, e, opt), L.symbols).dump();
  };
  const std::string v0 = value(d);
  const std::string h0 = closed ? homfly(d).str() : "";
  std::mt19937 rng(c.seed);
  json steps = json::array();
  std::ostringstream t;
  bool all = true;
  const std::size_t grow_below = d.slices.size() + 8;
  for (int i = 0; i < c.steps; ++i) {
    auto sites = move_sites(d, d.slices.size() < grow_below);
    if (sites.empty()) break;
    auto s = sites[std::uniform_int_distribution<std::size_t>(0, sites.size() - 1)(rng)];
    d = apply_move(d, s.move, s.at, s.pos);
    const bool same = value(d) == v0 && (!closed || homfly(d).str() == h0);
    all = all && same;
    steps.push_back({{"move", move_name(s.move)}, {"at", s.at}, {"pos", s.pos}, {"same", same}});
    t << move_name(s.move) << " @" << s.at << "," << s.pos << (same ? "" : "  CHANGED") << "\n";
  }
  t << (all ? "invariant unchanged" : "invariant CHANGED") << " after " << steps.size() << " moves\n";
  emit(c, out, json{{"seed", c.seed}, {"steps", steps}, {"final", word(d)}, {"pass", all}}, t.str());
  return all ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"axiom checks and diagram invariants for exact quantum structures", "oqa"};
  app.fallthrough();
  app.require_subcommand(1);
  Config c;
  app.add_option("--structure", c.structure, "structure JSON file");
  app.add_option("--diagram", c.diagrams, "diagram file or builtin:name");
  app.add_option("--bind", c.binds, "name=value or name=symbolic");
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", c.seed, "seed for randomized commands");
  app.add_option("--steps", c.steps, "moves for check-moves")->check(CLI::NonNegativeNumber);
  app.add_flag("--full", c.full, "report every failing slot");

  auto* ax = app.add_subcommand("check-axioms", "check the axioms of a structure");
  auto* show = app.add_subcommand("show", "print a structure as full JSON tables");
  auto* inv = app.add_subcommand("invariant", "evaluate a diagram");
  auto* hom = app.add_subcommand("homfly", "regular isotopy HOMFLY polynomial by skein recursion");
  auto* con = app.add_subcommand("conway", "Conway polynomial by skein recursion");
  auto* ver = app.add_subcommand("verify-skein", "compare a single-block structure with HOMFLY / Conway");
  auto* mov = app.add_subcommand("check-moves", "random move walk; the invariant must not change");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (ax->parsed()) return cmd_check_axioms(c, out);
    if (show->parsed()) return cmd_show(c, out);
    if (inv->parsed()) return cmd_invariant(c, out);
    if (hom->parsed()) return cmd_poly(c, out, true);
    if (con->parsed()) return cmd_poly(c, out, false);
    if (ver->parsed()) return cmd_verify_skein(c, out);
    if (mov->parsed()) return cmd_check_moves(c, out);
  } catch (const CheckFailure& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DiagramError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    // preconditions of the library (traces, twists, open vs closed)
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace oqa::cli
