#include "oqa/algebra.hpp"

#include <stdexcept>

namespace oqa {

int AlgebraSpec::label_index(const std::string& label) const {
  for (int i = 0; i < dim; ++i)
    if (labels[i] == label) return i;
  throw std::invalid_argument("unknown basis label '" + label + "' in algebra " + name);
}

AlgebraSpec matrix_algebra(int n) {
  if (n < 1) throw std::invalid_argument("matrix_algebra: n must be positive");
  AlgebraSpec a;
  a.name = "M" + std::to_string(n);
  a.dim = n * n;
  a.mult.assign(a.dim * a.dim, {});
  a.unit.assign(a.dim, Scalar());
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      a.labels.push_back("E" + std::to_string(i) + "_" + std::to_string(j));
      for (int m = 1; m <= n; ++m)
        a.mult[mat_index(n, i, j) * a.dim + mat_index(n, j, m)].emplace_back(mat_index(n, i, m),
                                                                            Scalar(1));
    }
    a.unit[mat_index(n, i, i)] = Scalar(1);
  }
  return a;
}

AlgebraSpec sweedler_algebra() {
  AlgebraSpec a;
  a.name = "H4";
  a.dim = 4;
  a.labels = {"1", "a", "x", "ax"};
  a.mult.assign(16, {});
  auto set = [&](int i, int j, int k, long c) { a.mult[i * 4 + j] = {{k, Scalar(c)}}; };
  for (int j = 0; j < 4; ++j) set(0, j, j, 1);
  set(1, 0, 1, 1);
  set(1, 1, 0, 1);
  set(1, 2, 3, 1);
  set(1, 3, 2, 1);
  set(2, 0, 2, 1);
  set(2, 1, 3, -1);
  set(3, 0, 3, 1);
  set(3, 1, 2, -1);
  a.unit = {Scalar(1), Scalar(), Scalar(), Scalar()};
  return a;
}

AlgebraSpec opposite_algebra(const AlgebraSpec& a) {
  AlgebraSpec o = a;
  o.name = a.name.size() > 3 && a.name.ends_with("^op") ? a.name.substr(0, a.name.size() - 3)
                                                       : a.name + "^op";
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) o.mult[i * a.dim + j] = a.mult[j * a.dim + i];
  return o;
}

bool check_associativity(const AlgebraSpec& a) {
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      for (int k = 0; k < a.dim; ++k) {
        auto x = AlgebraElement::basis(a.dim, i), y = AlgebraElement::basis(a.dim, j),
             z = AlgebraElement::basis(a.dim, k);
        if (mul(a, mul(a, x, y), z) != mul(a, x, mul(a, y, z))) return false;
      }
  return true;
}

bool check_unit(const AlgebraSpec& a) {
  auto one = AlgebraElement::one(a);
  for (int i = 0; i < a.dim; ++i) {
    auto x = AlgebraElement::basis(a.dim, i);
    if (mul(a, one, x) != x || mul(a, x, one) != x) return false;
  }
  return true;
}

// ---------------------------------------------------------------- elements

AlgebraElement AlgebraElement::basis(int dim, int i, Scalar c) {
  AlgebraElement x(dim);
  x.c_.at(i) = std::move(c);
  return x;
}

bool AlgebraElement::is_zero() const {
  for (const auto& s : c_)
    if (!s.is_zero()) return false;
  return true;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  AlgebraElement r = *this;
  for (int i = 0; i < dim(); ++i) r.c_[i] += o.c_[i];
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  AlgebraElement r = *this;
  for (int i = 0; i < dim(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

AlgebraElement AlgebraElement::scaled(const Scalar& s) const {
  AlgebraElement r = *this;
  for (auto& c : r.c_) c *= s;
  return r;
}

AlgebraElement mul(const AlgebraSpec& a, const AlgebraElement& x, const AlgebraElement& y) {
  AlgebraElement r(a.dim);
  for (int i = 0; i < a.dim; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < a.dim; ++j) {
      if (y[j].is_zero()) continue;
      Scalar c = x[i] * y[j];
      for (const auto& [k, s] : a.product(i, j)) r[k] += c * s;
    }
  }
  return r;
}

std::optional<AlgebraElement> invert(const AlgebraSpec& a, const AlgebraElement& x) {
  // Solve x * y = 1 as a linear system in y.
  std::vector<std::map<int, Scalar>> rows(a.dim);
  for (int i = 0; i < a.dim; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < a.dim; ++j)
      for (const auto& [k, s] : a.product(i, j)) rows[k][j] += x[i] * s;
  }
  for (auto& r : rows) std::erase_if(r, [](const auto& kv) { return kv.second.is_zero(); });
  auto y = solve_sparse(a.dim, std::move(rows), a.unit);
  if (!y) return std::nullopt;
  AlgebraElement inv(*y);
  if (mul(a, inv, x) != AlgebraElement::one(a)) return std::nullopt;
  return inv;
}

// ---------------------------------------------------------------- tensors

TensorSquareElement TensorSquareElement::one(const AlgebraSpec& a) {
  TensorSquareElement t;
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      if (!a.unit[i].is_zero() && !a.unit[j].is_zero()) t.add(i, j, a.unit[i] * a.unit[j]);
  return t;
}

void TensorSquareElement::add(int i, int j, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = c_.try_emplace({i, j}, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) c_.erase(it);
  }
}

Scalar TensorSquareElement::get(int i, int j) const {
  auto it = c_.find({i, j});
  return it == c_.end() ? Scalar() : it->second;
}

TensorSquareElement TensorSquareElement::transformed(
    const std::function<Scalar(const Scalar&)>& f) const {
  TensorSquareElement t;
  for (const auto& [k, c] : c_) t.add(k.first, k.second, f(c));
  return t;
}

TensorSquareElement tensor_flip(const TensorSquareElement& u) {
  TensorSquareElement t;
  for (const auto& [k, c] : u.entries()) t.add(k.second, k.first, c);
  return t;
}

TensorSquareElement tensor_mul(const AlgebraSpec& a, const TensorSquareElement& u,
                               const TensorSquareElement& v, bool second_factor_opposite) {
  TensorSquareElement r;
  for (const auto& [ku, cu] : u.entries()) {
    for (const auto& [kv, cv] : v.entries()) {
      const auto& p1 = a.product(ku.first, kv.first);
      if (p1.empty()) continue;
      const auto& p2 = second_factor_opposite ? a.product(kv.second, ku.second)
                                              : a.product(ku.second, kv.second);
      if (p2.empty()) continue;
      Scalar c = cu * cv;
      for (const auto& [i, s1] : p1)
        for (const auto& [j, s2] : p2) r.add(i, j, c * s1 * s2);
    }
  }
  return r;
}

TensorSquareElement tensor_invert(const AlgebraSpec& a, const TensorSquareElement& u) {
  // A(x)A flattened to dim^2 coordinates; left multiplication by u is linear.
  const int d = a.dim, n = d * d;
  std::vector<std::map<int, Scalar>> rows(n);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      int col = k * d + l;
      for (const auto& [ku, cu] : u.entries()) {
        const auto& p1 = a.product(ku.first, k);
        const auto& p2 = a.product(ku.second, l);
        for (const auto& [i, s1] : p1)
          for (const auto& [j, s2] : p2) rows[i * d + j][col] += cu * s1 * s2;
      }
    }
  }
  for (auto& r : rows) std::erase_if(r, [](const auto& kv) { return kv.second.is_zero(); });
  std::vector<Scalar> b(n);
  const auto one = TensorSquareElement::one(a);
  for (const auto& [k, c] : one.entries()) b[k.first * d + k.second] = c;
  auto x = solve_sparse(n, std::move(rows), std::move(b));
  if (!x) throw std::domain_error("tensor_invert: element is not invertible in A(x)A");
  TensorSquareElement v;
  for (int i = 0; i < n; ++i) v.add(i / d, i % d, (*x)[i]);
  if (tensor_mul(a, v, u) != one)
    throw std::domain_error("tensor_invert: right inverse is not a left inverse");
  return v;
}

std::optional<QybeWitness> qybe_witness(const AlgebraSpec& a, const TensorSquareElement& rho) {
  using Key3 = std::tuple<int, int, int>;
  std::map<Key3, Scalar> lhs, rhs;
  auto acc = [&](std::map<Key3, Scalar>& out, const SparseVec& p1, const SparseVec& p2,
                 const SparseVec& p3, const Scalar& c) {
    for (const auto& [i, s1] : p1)
      for (const auto& [j, s2] : p2)
        for (const auto& [k, s3] : p3) out[{i, j, k}] += c * s1 * s2 * s3;
  };
  // rho12 rho13 rho23 = sum e_i e_k (x) e_j e_m (x) e_l e_n
  // rho23 rho13 rho12 = sum e_k e_i (x) e_x e_j (x) e_y e_l
  const auto& es = rho.entries();
  for (const auto& [r1, c1] : es) {
    for (const auto& [r2, c2] : es) {
      const Scalar c12 = c1 * c2;
      for (const auto& [r3, c3] : es) {
        Scalar c = c12 * c3;
        // lhs with rho12=r1, rho13=r2, rho23=r3
        const auto& l1 = a.product(r1.first, r2.first);
        if (!l1.empty()) {
          const auto& l2 = a.product(r1.second, r3.first);
          const auto& l3 = a.product(r2.second, r3.second);
          if (!l2.empty() && !l3.empty()) acc(lhs, l1, l2, l3, c);
        }
        // rhs with rho23=r1, rho13=r2, rho12=r3
        const auto& q1 = a.product(r2.first, r3.first);
        if (!q1.empty()) {
          const auto& q2 = a.product(r1.first, r3.second);
          const auto& q3 = a.product(r1.second, r2.second);
          if (!q2.empty() && !q3.empty()) acc(rhs, q1, q2, q3, c);
        }
      }
    }
  }
  auto it = lhs.begin(), jt = rhs.begin();
  auto next_nonzero = [](auto& iter, const auto& m) {
    while (iter != m.end() && iter->second.is_zero()) ++iter;
  };
  for (;;) {
    next_nonzero(it, lhs);
    next_nonzero(jt, rhs);
    if (it == lhs.end() && jt == rhs.end()) return std::nullopt;
    if (jt == rhs.end() || (it != lhs.end() && it->first < jt->first)) {
      auto [i, j, k] = it->first;
      return QybeWitness{i, j, k, it->second, Scalar()};
    }
    if (it == lhs.end() || jt->first < it->first) {
      auto [i, j, k] = jt->first;
      return QybeWitness{i, j, k, Scalar(), jt->second};
    }
    if (it->second != jt->second) {
      auto [i, j, k] = it->first;
      return QybeWitness{i, j, k, it->second, jt->second};
    }
    ++it;
    ++jt;
  }
}

// ---------------------------------------------------------------- maps

AlgebraMap::AlgebraMap(int dim) : dim_(dim), m_(dim * dim) {}

AlgebraMap AlgebraMap::identity(int dim) {
  AlgebraMap f(dim);
  for (int i = 0; i < dim; ++i) f.set(i, i, Scalar(1));
  return f;
}

AlgebraMap AlgebraMap::diagonal(const std::vector<Scalar>& d) {
  AlgebraMap f(static_cast<int>(d.size()));
  for (int i = 0; i < f.dim_; ++i) f.set(i, i, d[i]);
  return f;
}

bool AlgebraMap::is_diagonal() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (i != j && !at(i, j).is_zero()) return false;
  return true;
}

bool AlgebraMap::is_identity() const { return *this == identity(dim_); }

AlgebraElement AlgebraMap::image(int j) const {
  AlgebraElement x(dim_);
  for (int i = 0; i < dim_; ++i) x[i] = at(i, j);
  return x;
}

AlgebraElement AlgebraMap::apply(const AlgebraElement& x) const {
  AlgebraElement r(dim_);
  for (int j = 0; j < dim_; ++j) {
    if (x[j].is_zero()) continue;
    for (int i = 0; i < dim_; ++i)
      if (!at(i, j).is_zero()) r[i] += at(i, j) * x[j];
  }
  return r;
}

AlgebraMap AlgebraMap::compose(const AlgebraMap& g) const {
  AlgebraMap r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < dim_; ++j)
        if (!g.at(k, j).is_zero()) r.m_[i * dim_ + j] += at(i, k) * g.at(k, j);
    }
  return r;
}

AlgebraMap AlgebraMap::reduced(const RootReducer& red) const {
  AlgebraMap r = *this;
  for (auto& s : r.m_) s = red.reduce(s);
  return r;
}

AlgebraMap AlgebraMap::inverse(const RootReducer* red) const {
  AlgebraMap r(dim_);
  if (is_diagonal()) {
    for (int i = 0; i < dim_; ++i) {
      if (at(i, i).is_zero()) throw std::domain_error("AlgebraMap::inverse: singular map");
      r.set(i, i, at(i, i).inverse());
    }
  } else {
    for (int j = 0; j < dim_; ++j) {
      std::vector<std::map<int, Scalar>> rows(dim_);
      for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < dim_; ++k)
          if (!at(i, k).is_zero()) rows[i][k] = at(i, k);
      std::vector<Scalar> b(dim_);
      b[j] = Scalar(1);
      auto x = solve_sparse(dim_, std::move(rows), std::move(b));
      if (!x) throw std::domain_error("AlgebraMap::inverse: singular map");
      for (int i = 0; i < dim_; ++i) r.set(i, j, (*x)[i]);
    }
  }
  return red ? r.reduced(*red) : r;
}

AlgebraMap AlgebraMap::power(int k, const RootReducer* red) const {
  if (k < 0) return inverse(red).power(-k, red);
  AlgebraMap r = identity(dim_), b = *this;
  while (k) {
    if (k & 1) {
      r = r.compose(b);
      if (red) r = r.reduced(*red);
    }
    k >>= 1;
    if (k) {
      b = b.compose(b);
      if (red) b = b.reduced(*red);
    }
  }
  return r;
}

bool is_algebra_map(const AlgebraSpec& a, const AlgebraMap& f, const RootReducer* red) {
  auto rd = [&](AlgebraElement x) {
    if (red)
      for (int i = 0; i < x.dim(); ++i) x[i] = red->reduce(x[i]);
    return x;
  };
  if (rd(f.apply(AlgebraElement::one(a))) != AlgebraElement::one(a)) return false;
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      auto xy = mul(a, AlgebraElement::basis(a.dim, i), AlgebraElement::basis(a.dim, j));
      if (rd(f.apply(xy)) != rd(mul(a, f.image(i), f.image(j)))) return false;
    }
  return true;
}

TensorSquareElement apply_map_tensor(const AlgebraMap& f, const AlgebraMap& g,
                                     const TensorSquareElement& u) {
  TensorSquareElement r;
  for (const auto& [k, c] : u.entries())
    for (int i = 0; i < f.dim(); ++i) {
      const Scalar& fi = f.at(i, k.first);
      if (fi.is_zero()) continue;
      for (int j = 0; j < g.dim(); ++j) {
        const Scalar& gj = g.at(j, k.second);
        if (!gj.is_zero()) r.add(i, j, c * fi * gj);
      }
    }
  return r;
}

// ---------------------------------------------------------------- solver

namespace {
// Rough cost of a pivot: smaller polynomials first.
std::size_t weight(const Scalar& s) { return s.num().terms().size() + s.den().terms().size(); }
}  // namespace

std::optional<std::vector<Scalar>> solve_sparse(int n, std::vector<std::map<int, Scalar>> rows,
                                                std::vector<Scalar> b) {
  std::vector<int> pivot_row_of_col(n, -1);
  std::vector<bool> used(n, false);
  for (int step = 0; step < n; ++step) {
    // Markowitz-style choice over all unused rows.
    int br = -1, bc = -1;
    std::size_t best = SIZE_MAX;
    for (int r = 0; r < n; ++r) {
      if (used[r] || rows[r].empty()) continue;
      for (const auto& [c, v] : rows[r]) {
        if (pivot_row_of_col[c] >= 0) continue;
        std::size_t cost = rows[r].size() * 64 + weight(v);
        if (cost < best) {
          best = cost;
          br = r;
          bc = c;
        }
      }
    }
    if (br < 0) return std::nullopt;
    used[br] = true;
    pivot_row_of_col[bc] = br;
    Scalar inv = rows[br][bc].inverse();
    for (auto& [c, v] : rows[br]) v *= inv;
    b[br] *= inv;
    const auto prow = rows[br];
    const Scalar pb = b[br];
    for (int r = 0; r < n; ++r) {
      if (r == br) continue;
      auto it = rows[r].find(bc);
      if (it == rows[r].end()) continue;
      Scalar f = it->second;
      for (const auto& [c, v] : prow) {
        Scalar& t = rows[r][c];
        t -= f * v;
        if (t.is_zero()) rows[r].erase(c);
      }
      b[r] -= f * pb;
    }
  }
  std::vector<Scalar> x(n);
  for (int c = 0; c < n; ++c) x[c] = b[pivot_row_of_col[c]];
  return x;
}

}  // namespace oqa
