#include "oqa/oqa.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace oqa {

TensorSquareElement Structure::reduce(const TensorSquareElement& u) const {
  if (roots.empty()) return u;
  return u.transformed([&](const Scalar& c) { return roots.reduce(c); });
}

AlgebraElement Structure::reduce(const AlgebraElement& x) const {
  if (roots.empty()) return x;
  AlgebraElement r = x;
  for (int i = 0; i < r.dim(); ++i) r[i] = roots.reduce(r[i]);
  return r;
}

namespace {

std::string slot(const AlgebraSpec& a, int i, int j) {
  return a.labels[i] + " (x) " + a.labels[j];
}

// First slot where u and v differ, or empty.
std::optional<std::pair<int, int>> first_difference(const TensorSquareElement& u,
                                                    const TensorSquareElement& v) {
  std::set<std::pair<int, int>> keys;
  for (const auto& [k, c] : u.entries()) keys.insert(k);
  for (const auto& [k, c] : v.entries()) keys.insert(k);
  for (const auto& k : keys)
    if (u.get(k.first, k.second) != v.get(k.first, k.second)) return k;
  return std::nullopt;
}

}  // namespace

AxiomReport check_axioms(const Structure& s, bool full_report) {
  AxiomReport rep;
  const auto& A = s.algebra;
  auto fail = [&](const std::string& ax, bool& flag, const std::string& detail) {
    if (!flag && !full_report) return;
    flag = false;
    rep.witnesses.push_back({ax, detail});
  };
  const auto one = TensorSquareElement::one(A);
  const auto id = AlgebraMap::identity(A.dim);

  // (qa.1): (1 (x) t_u)(rho) and (t_d (x) 1)(rho^-1) are inverse in A (x) A^op.
  auto X = s.reduce(apply_map_tensor(id, s.t_u, s.rho));
  auto Y = s.reduce(apply_map_tensor(s.t_d, id, s.rho_inv));
  for (int side = 0; side < 2; ++side) {
    auto p = s.reduce(side == 0 ? tensor_mul(A, X, Y, true) : tensor_mul(A, Y, X, true));
    if (auto d = first_difference(p, one))
      fail("qa1", rep.qa1,
           std::string(side == 0 ? "(1(x)t_u)(rho) * (t_d(x)1)(rho^-1)" : "(t_d(x)1)(rho^-1) * (1(x)t_u)(rho)") +
               " differs from 1(x)1 at " + slot(A, d->first, d->second));
  }
  if (s.reduce(tensor_mul(A, s.rho, s.rho_inv)) != one)
    fail("qa1", rep.qa1, "rho_inv is not the inverse of rho");

  // (qa.2): t_d, t_u commuting automorphisms fixing rho.
  const AlgebraMap* maps[2] = {&s.t_d, &s.t_u};
  const char* names[2] = {"t_d", "t_u"};
  for (int m = 0; m < 2; ++m) {
    const auto& t = *maps[m];
    if (!is_algebra_map(A, t, &s.roots)) fail("qa2", rep.qa2, std::string(names[m]) + " is not an algebra map");
    auto tr = s.reduce(apply_map_tensor(t, t, s.rho));
    if (auto d = first_difference(tr, s.reduce(s.rho)))
      fail("qa2", rep.qa2,
           std::string("(") + names[m] + "(x)" + names[m] + ")(rho) differs from rho at " +
               slot(A, d->first, d->second));
  }
  if (s.t_d.compose(s.t_u).reduced(s.roots) != s.t_u.compose(s.t_d).reduced(s.roots))
    fail("qa2", rep.qa2, "t_d and t_u do not commute");
  try {
    s.t_d.inverse(&s.roots);
    s.t_u.inverse(&s.roots);
  } catch (const std::domain_error&) {
    fail("qa2", rep.qa2, "automorphism is singular");
  }

  // (qa.3)
  if (auto w = qybe_witness(A, s.rho)) {
    std::ostringstream os;
    os << "rho12 rho13 rho23 != rho23 rho13 rho12 at " << A.labels[w->i] << " (x) "
       << A.labels[w->j] << " (x) " << A.labels[w->k];
    fail("qa3", rep.qa3, os.str());
  }
  return rep;
}

TensorSquareElement build_rho_abc(int n, const Scalar& a, const Scalar& bc, const PairTable& b) {
  if (a.is_zero() || bc.is_zero()) throw std::invalid_argument("build_rho_abc: a and bc must be invertible");
  TensorSquareElement rho;
  const Scalar x = a - bc / a;
  for (int i = 1; i <= n; ++i) {
    rho.add(mat_index(n, i, i), mat_index(n, i, i), a);
    for (int l = i + 1; l <= n; ++l) {
      auto it = b.find({i, l});
      if (it == b.end())
        throw std::invalid_argument("build_rho_abc: missing b_" + std::to_string(i) + std::to_string(l));
      if (it->second.is_zero()) throw std::invalid_argument("build_rho_abc: b entries must be invertible");
      rho.add(mat_index(n, i, l), mat_index(n, l, i), x);
      rho.add(mat_index(n, i, i), mat_index(n, l, l), it->second);
      rho.add(mat_index(n, l, l), mat_index(n, i, i), bc / it->second);
    }
  }
  return rho;
}

AlgebraMap diagonal_automorphism(int n, const std::vector<Scalar>& omega_sq, SymbolTable& st,
                                 RootReducer& roots, const std::vector<int>& flip) {
  if (static_cast<int>(omega_sq.size()) != n) throw std::invalid_argument("omega_sq has wrong length");
  std::vector<Scalar> omega(n);
  std::vector<int> reps;
  for (int i = 0; i < n; ++i) {
    if (omega_sq[i].is_zero()) throw std::invalid_argument("omega_i^2 must be nonzero");
    bool placed = false;
    for (int r : reps) {
      if (auto s = exact_sqrt(omega_sq[i] / omega_sq[r])) {
        omega[i] = *s * omega[r];
        placed = true;
        break;
      }
    }
    if (placed) continue;
    if (auto s = exact_sqrt(omega_sq[i])) {
      omega[i] = *s;
    } else {
      std::string base = "omega" + std::to_string(i + 1), name = base;
      for (int k = 2; st.find(name); ++k) name = base + "_" + std::to_string(k);
      int sym = st.declare(name);
      roots.add(sym, omega_sq[i]);
      omega[i] = Scalar::var(sym);
    }
    if (std::find(flip.begin(), flip.end(), i + 1) != flip.end()) omega[i] = -omega[i];
    reps.push_back(i);
  }
  AlgebraMap t(n * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      int k = mat_index(n, i, j);
      t.set(k, k, roots.reduce(omega[i - 1] / omega[j - 1]));
    }
  return t;
}

AlgebraElement diagonal_element(int n, const std::vector<Scalar>& d) {
  AlgebraElement g(n * n);
  for (int i = 1; i <= n; ++i) g[mat_index(n, i, i)] = d.at(i - 1);
  return g;
}

namespace {

Structure finish_mn(std::string name, int n, TensorSquareElement rho, const std::vector<Scalar>& omega_sq,
                    SymbolTable& st, const std::vector<int>& flip) {
  Structure s;
  s.name = std::move(name);
  s.algebra = matrix_algebra(n);
  s.rho_inv = tensor_invert(s.algebra, rho);
  s.rho = std::move(rho);
  s.t_d = diagonal_automorphism(n, omega_sq, st, s.roots, flip);
  s.t_u = s.t_d;
  s.twist = diagonal_element(n, omega_sq);
  std::vector<Scalar> inv;
  for (const auto& w : omega_sq) inv.push_back(w.inverse());
  s.twist_inv = diagonal_element(n, inv);
  return s;
}

}  // namespace

Structure build_balanced_mn(int n, const Scalar& a, const Scalar& bc, const PairTable& b,
                                  const Scalar& omega1_sq, SymbolTable& st) {
  if (a.is_zero() || bc.is_zero() || omega1_sq.is_zero())
    throw std::invalid_argument("build_balanced_mn: a, bc, omega1^2 must be nonzero");
  if (a * a == bc) throw std::invalid_argument("build_balanced_mn: parameter constraint a^2 != bc violated");
  std::vector<Scalar> w(n);
  const Scalar r = a * a / bc;
  for (int i = 0; i < n; ++i) w[i] = r.pow(i) * omega1_sq;
  return finish_mn("balanced_mn", n, build_rho_abc(n, a, bc, b), w, st, {});
}

// ---------------------------------------------------------------- classification

bool ClassificationReport::pass() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.pass; });
}

const ClauseResult& ClassificationReport::clause(const std::string& name) const {
  for (const auto& c : clauses)
    if (c.clause == name) return c;
  throw std::out_of_range("no clause " + name);
}

namespace {

void check_blocks(const MnParams& p) {
  if (p.n < 1) throw std::invalid_argument("params: n must be positive");
  if (static_cast<int>(p.a.size()) != p.n || static_cast<int>(p.omega_sq.size()) != p.n)
    throw std::invalid_argument("params: a and omega_sq need n entries");
  if (p.bc.size() != p.blocks.size()) throw std::invalid_argument("params: one bc per block");
  std::vector<int> seen(p.n + 1, 0);
  for (const auto& b : p.blocks)
    for (int i : b) {
      if (i < 1 || i > p.n) throw std::invalid_argument("params: block index out of range");
      if (seen[i]++) throw std::invalid_argument("params: blocks overlap");
    }
  for (int i = 1; i <= p.n; ++i)
    if (!seen[i]) throw std::invalid_argument("params: blocks do not cover " + std::to_string(i));
}

std::string ij(int i, int j) { return std::to_string(i) + "," + std::to_string(j); }

}  // namespace

TensorSquareElement rho_from_params(const MnParams& p) {
  check_blocks(p);
  const int n = p.n;
  TensorSquareElement rho;
  PairTable cross;
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    const auto& blk = p.blocks[b];
    for (std::size_t u = 0; u < blk.size(); ++u)
      for (std::size_t v = u + 1; v < blk.size(); ++v) {
        const Scalar& ai = p.a[blk[u] - 1];
        if (ai.is_zero()) throw std::invalid_argument("params: a_i must be nonzero");
        cross[{blk[u], blk[v]}] = ai - p.bc[b] / ai;
      }
  }
  for (const auto& [k, v] : p.cross) cross[k] = v;
  for (int i = 1; i <= n; ++i) {
    rho.add(mat_index(n, i, i), mat_index(n, i, i), p.a[i - 1]);
    for (int l = 1; l <= n; ++l) {
      if (l == i) continue;
      auto it = p.off.find({i, l});
      if (it == p.off.end()) throw std::invalid_argument("params: missing rho_" + ij(i, l));
      rho.add(mat_index(n, i, i), mat_index(n, l, l), it->second);
    }
  }
  for (const auto& [k, v] : cross) {
    if (k.first == k.second) throw std::invalid_argument("params: cross entry needs i != j");
    rho.add(mat_index(n, k.first, k.second), mat_index(n, k.second, k.first), v);
  }
  return rho;
}

ClassificationReport classify_rho(int n, const TensorSquareElement& rho, const std::vector<Scalar>& omega_sq) {
  ClassificationReport rep;
  auto E = [n](int i, int j) { return mat_index(n, i, j); };
  auto P = [&](int i, int l) { return rho.get(E(i, i), E(l, l)); };  // rho_ilil
  auto X = [&](int i, int j) { return rho.get(E(i, j), E(j, i)); };  // rho_ijji
  auto a = [&](int i) { return P(i, i); };

  ClauseResult form{"form", true, ""};
  for (const auto& [k, c] : rho.entries()) {
    int i = k.first / n + 1, j = k.first % n + 1, l = k.second / n + 1, m = k.second % n + 1;
    bool ok = (i == j && l == m) || (i == m && j == l);
    if (!ok && form.pass) {
      form.pass = false;
      form.detail = "nonzero entry outside {i,l}={j,m} at E" + ij(i, j) + " (x) E" + ij(l, m);
    }
  }
  rep.clauses.push_back(form);

  ClauseResult ca{"a", true, ""};
  for (int i = 1; i <= n && ca.pass; ++i)
    for (int j = 1; j <= n; ++j)
      if (P(i, j).is_zero()) {
        ca.pass = false;
        ca.detail = "rho_ijij vanishes at " + ij(i, j);
        break;
      }
  rep.clauses.push_back(ca);

  // Components of the relation i -> j iff rho_ijji != 0.
  std::vector<int> comp(n + 1, -1);
  int ncomp = 0;
  for (int s = 1; s <= n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 1; j <= n; ++j)
        if (j != i && comp[j] < 0 && (!X(i, j).is_zero() || !X(j, i).is_zero())) {
          comp[j] = ncomp;
          stack.push_back(j);
        }
    }
    ++ncomp;
  }

  ClauseResult cb{"b", true, ""};
  std::vector<std::vector<int>> blocks(ncomp);
  for (int i = 1; i <= n; ++i) blocks[comp[i]].push_back(i);
  for (auto& blk : blocks) {
    for (int i : blk)
      for (int j : blk) {
        if (i >= j) continue;
        bool f = !X(i, j).is_zero(), g = !X(j, i).is_zero();
        if (f == g && cb.pass) {
          cb.pass = false;
          cb.detail = "pair " + ij(i, j) + (f ? " related both ways" : " incomparable");
        }
        for (int k : blk)
          if (k != i && k != j && cb.pass) {
            for (auto [x, y] : {std::pair{i, j}, std::pair{j, i}})
              if (!X(x, y).is_zero() && !X(y, k).is_zero() && X(x, k).is_zero() && cb.pass) {
                cb.pass = false;
                cb.detail = "not transitive at " + ij(x, y) + "," + std::to_string(k);
              }
          }
      }
    if (cb.pass) {
      auto preds = [&](int j) {
        int c = 0;
        for (int i : blk)
          if (i != j && !X(i, j).is_zero()) ++c;
        return c;
      };
      std::stable_sort(blk.begin(), blk.end(), [&](int x, int y) { return preds(x) < preds(y); });
    }
  }
  rep.derived_blocks = blocks;
  rep.clauses.push_back(cb);

  ClauseResult cc{"c", true, ""};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j && comp[i] != comp[j] && !X(i, j).is_zero() && cc.pass) {
        cc.pass = false;
        cc.detail = "rho_ijji nonzero across blocks at " + ij(i, j);
      }
  rep.clauses.push_back(cc);

  ClauseResult d1{"d-i", true, ""}, d2{"d-ii", true, ""}, d3{"d-iii", true, ""},
      d4{"d-iv", true, ""}, ce{"e", true, ""};
  auto failc = [](ClauseResult& c, const std::string& msg) {
    if (c.pass) {
      c.pass = false;
      c.detail = msg;
    }
  };
  if (!cb.pass || !ca.pass) {
    for (auto* c : {&d1, &d2, &d3, &d4, &ce}) failc(*c, "not evaluated: clauses (a) and (b) required");
  } else {
    for (const auto& blk : blocks) {
      if (blk.size() < 2) continue;
      const int e = blk[0];
      const Scalar bc = P(e, blk[1]) * P(blk[1], e);
      const Scalar x = X(e, blk[1]);
      for (std::size_t u = 0; u < blk.size(); ++u)
        for (std::size_t v = u + 1; v < blk.size(); ++v) {
          int i = blk[u], j = blk[v];
          if (P(i, j) * P(j, i) != bc) failc(d2, "rho_ijij rho_jiji != bc_l at " + ij(i, j));
          if (X(i, j) != x || X(i, j) != a(i) - bc / a(i))
            failc(d3, "rho_ijji != a_i - bc_l/a_i at " + ij(i, j));
          if (a(i) != a(j) && a(i) * a(j) != -bc) failc(d4, "a_i, a_j unrelated at " + ij(i, j));
        }
      if (x.is_zero()) failc(d3, "x_l vanishes");
      // omega_u^2 = (a_e a_u / bc) prod_{e<j<u} (a_j^2/bc) omega_e^2
      Scalar prod(1);
      for (std::size_t u = 1; u < blk.size(); ++u) {
        int w = blk[u];
        Scalar want = a(e) * a(w) / bc * prod * omega_sq[e - 1];
        if (omega_sq[w - 1] != want) failc(d1, "omega^2 mismatch at " + std::to_string(w));
        prod *= a(w) * a(w) / bc;
      }
      for (std::size_t u = 0; u < blk.size(); ++u)
        for (std::size_t v = u + 1; v < blk.size(); ++v)
          for (int k = 1; k <= n; ++k) {
            if (comp[k] == comp[blk[0]]) continue;
            int i = blk[u], l = blk[v];
            if (P(i, k) * P(k, i) != P(l, k) * P(k, l))
              failc(ce, "rho_ikik rho_kiki != rho_lklk rho_klkl at " + ij(i, l) + "," + std::to_string(k));
          }
    }
  }
  for (auto* c : {&d1, &d2, &d3, &d4, &ce}) rep.clauses.push_back(*c);
  return rep;
}

ClassificationReport classify_params(const MnParams& p) {
  auto rep = classify_rho(p.n, rho_from_params(p), p.omega_sq);
  auto norm = [](std::vector<std::vector<int>> b) {
    for (auto& x : b) std::sort(x.begin(), x.end());
    std::sort(b.begin(), b.end());
    return b;
  };
  if (norm(p.blocks) != norm(rep.derived_blocks))
    rep.warnings.push_back("declared partition differs from the rho-components");
  else if (rep.clause("b").pass) {
    for (const auto& blk : p.blocks) {
      auto it = std::find_if(rep.derived_blocks.begin(), rep.derived_blocks.end(),
                             [&](const auto& d) { return norm({d}) == norm({blk}); });
      if (it != rep.derived_blocks.end() && *it != blk)
        rep.warnings.push_back("declared block order differs from the rho-ordering");
    }
  }
  return rep;
}

Structure build_from_params(const MnParams& p, SymbolTable& st, const std::vector<int>& flip) {
  auto rep = classify_params(p);
  if (!rep.pass()) {
    std::string msg = "classification conditions fail:";
    for (const auto& c : rep.clauses)
      if (!c.pass) msg += " (" + c.clause + ") " + c.detail + ";";
    throw std::invalid_argument(msg);
  }
  return assemble_params(p, st, flip);
}

Structure assemble_params(const MnParams& p, SymbolTable& st, const std::vector<int>& flip) {
  return finish_mn("mn_params", p.n, rho_from_params(p), p.omega_sq, st, flip);
}

// ---------------------------------------------------------------- derived structures

Structure standardize(const Structure& s) {
  if (!check_axioms(s).ok()) throw std::invalid_argument("standardize: structure fails the axioms");
  Structure r = s;
  r.name = s.name.ends_with("/std") ? s.name : s.name + "/std";
  r.t_d = AlgebraMap::identity(s.algebra.dim);
  r.t_u = s.t_d.compose(s.t_u).reduced(s.roots);
  return r;
}

Structure opposite(const Structure& s) {
  Structure r = s;
  r.name = s.name.ends_with("^op") ? s.name.substr(0, s.name.size() - 3) : s.name + "^op";
  r.algebra = opposite_algebra(s.algebra);
  r.twist = s.twist_inv;
  r.twist_inv = s.twist;
  return r;
}

Structure sweedler_oqa(const Scalar& alpha) {
  Structure s;
  s.name = "sweedler";
  s.algebra = sweedler_algebra();
  const Scalar h(mpq_class(1, 2)), ha = alpha * h;
  // basis: 0 = 1, 1 = a, 2 = x, 3 = ax
  s.rho.add(0, 0, h);
  s.rho.add(0, 1, h);
  s.rho.add(1, 0, h);
  s.rho.add(1, 1, -h);
  s.rho.add(2, 2, ha);
  s.rho.add(2, 3, ha);
  s.rho.add(3, 3, ha);
  s.rho.add(3, 2, -ha);
  s.rho_inv = tensor_invert(s.algebra, s.rho);
  s.t_d = AlgebraMap::identity(4);
  s.t_u = AlgebraMap::diagonal({Scalar(1), Scalar(1), Scalar(-1), Scalar(-1)});
  return s;
}

Structure attach_twist(const Structure& s, const AlgebraElement& g) {
  const auto& A = s.algebra;
  auto gi = invert(A, g);
  if (!gi) throw std::invalid_argument("attach_twist: G is not invertible");
  if (s.reduce(s.t_d.apply(g)) != g) throw std::invalid_argument("attach_twist: t_d(G) != G");
  if (s.reduce(s.t_u.apply(g)) != g) throw std::invalid_argument("attach_twist: t_u(G) != G");
  auto tt = s.t_d.compose(s.t_u);
  for (int i = 0; i < A.dim; ++i) {
    auto x = AlgebraElement::basis(A.dim, i);
    if (s.reduce(tt.apply(x)) != s.reduce(mul(A, mul(A, g, x), *gi)))
      throw std::invalid_argument("attach_twist: conjugation by G differs from t_d o t_u at " +
                                  A.labels[i]);
  }
  Structure r = s;
  r.twist = g;
  r.twist_inv = *gi;
  return r;
}

// ---------------------------------------------------------------- spans

AlgebraElement RrefSpan::reduce(AlgebraElement v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Scalar c = v[pivots_[r]];
    if (c.is_zero()) continue;
    v = v - rows_[r].scaled(c);
  }
  return v;
}

bool RrefSpan::insert(AlgebraElement v) {
  v = reduce(std::move(v));
  int p = -1;
  for (int i = 0; i < dim_; ++i)
    if (!v[i].is_zero()) {
      p = i;
      break;
    }
  if (p < 0) return false;
  v = v.scaled(v[p].inverse());
  for (auto& r : rows_)
    if (!r[p].is_zero()) r = r - v.scaled(r[p]);
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

bool RrefSpan::contains(const AlgebraElement& v) const { return reduce(v).is_zero(); }

std::vector<AlgebraElement> RrefSpan::basis() const { return rows_; }

std::vector<AlgebraElement> minimal_subalgebra(const Structure& s) {
  const auto& A = s.algebra;
  const int d = A.dim;
  RrefSpan span(d);
  span.insert(AlgebraElement::one(A));
  for (const auto* u : {&s.rho, &s.rho_inv}) {
    // first-tensorand span: for each j the column sum_i c_ij e_i; likewise rows
    std::map<int, AlgebraElement> left, right;
    for (const auto& [k, c] : u->entries()) {
      left.try_emplace(k.second, AlgebraElement(d)).first->second[k.first] += c;
      right.try_emplace(k.first, AlgebraElement(d)).first->second[k.second] += c;
    }
    for (auto& [j, v] : left) span.insert(v);
    for (auto& [i, v] : right) span.insert(v);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    auto basis = span.basis();
    for (const auto& x : basis) {
      grew |= span.insert(s.reduce(s.t_d.apply(x)));
      grew |= span.insert(s.reduce(s.t_u.apply(x)));
      for (const auto& y : basis) grew |= span.insert(mul(A, x, y));
    }
  }
  return span.basis();
}

// ---------------------------------------------------------------- traces

std::vector<Scalar> matrix_trace(int n) {
  std::vector<Scalar> t(n * n);
  for (int i = 1; i <= n; ++i) t[mat_index(n, i, i)] = Scalar(1);
  return t;
}

Scalar apply_trace(const std::vector<Scalar>& trace, const AlgebraElement& x) {
  Scalar r;
  for (int i = 0; i < x.dim(); ++i)
    if (!x[i].is_zero() && !trace[i].is_zero()) r += trace[i] * x[i];
  return r;
}

void check_trace(const Structure& s, const std::vector<Scalar>& trace) {
  const auto& A = s.algebra;
  if (static_cast<int>(trace.size()) != A.dim) throw std::invalid_argument("trace has wrong length");
  for (int i = 0; i < A.dim; ++i) {
    auto x = AlgebraElement::basis(A.dim, i);
    for (int j = 0; j < A.dim; ++j) {
      auto y = AlgebraElement::basis(A.dim, j);
      if (apply_trace(trace, mul(A, x, y)) != apply_trace(trace, mul(A, y, x)))
        throw std::invalid_argument("trace is not tracelike at " + A.labels[i] + ", " + A.labels[j]);
    }
    if (s.reduce(apply_trace(trace, s.t_d.apply(x))) != trace[i])
      throw std::invalid_argument("trace is not t_d-invariant at " + A.labels[i]);
    if (s.reduce(apply_trace(trace, s.t_u.apply(x))) != trace[i])
      throw std::invalid_argument("trace is not t_u-invariant at " + A.labels[i]);
  }
}

}  // namespace oqa
