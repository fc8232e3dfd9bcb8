#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "oqa/scalar.hpp"

namespace oqa {

using SparseVec = std::vector<std::pair<int, Scalar>>;

struct AlgebraSpec {
  std::string name;
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<SparseVec> mult;  // mult[i*dim+j]: e_i*e_j as (k, c) pairs
  std::vector<Scalar> unit;     // coefficients of 1_A

  const SparseVec& product(int i, int j) const { return mult[i * dim + j]; }
  int label_index(const std::string& label) const;
};

AlgebraSpec matrix_algebra(int n);
AlgebraSpec sweedler_algebra();
AlgebraSpec opposite_algebra(const AlgebraSpec& a);

// Index of E_ij (1-based i, j) in matrix_algebra(n).
inline int mat_index(int n, int i, int j) { return (i - 1) * n + (j - 1); }

bool check_associativity(const AlgebraSpec& a);
bool check_unit(const AlgebraSpec& a);

class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(int dim) : c_(dim) {}
  AlgebraElement(std::vector<Scalar> c) : c_(std::move(c)) {}  // NOLINT(implicit)
  static AlgebraElement basis(int dim, int i, Scalar c = Scalar(1));
  static AlgebraElement one(const AlgebraSpec& a) { return AlgebraElement(a.unit); }

  int dim() const { return static_cast<int>(c_.size()); }
  const Scalar& operator[](int i) const { return c_[i]; }
  Scalar& operator[](int i) { return c_[i]; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  bool is_zero() const;

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement scaled(const Scalar& s) const;
  friend bool operator==(const AlgebraElement& x, const AlgebraElement& y) { return x.c_ == y.c_; }
  friend bool operator!=(const AlgebraElement& x, const AlgebraElement& y) { return !(x == y); }

 private:
  std::vector<Scalar> c_;
};

AlgebraElement mul(const AlgebraSpec& a, const AlgebraElement& x, const AlgebraElement& y);
std::optional<AlgebraElement> invert(const AlgebraSpec& a, const AlgebraElement& x);

// Sum of c * e_i (x) e_j; zero coefficients are never stored.
class TensorSquareElement {
 public:
  using Key = std::pair<int, int>;
  TensorSquareElement() = default;

  static TensorSquareElement one(const AlgebraSpec& a);
  void add(int i, int j, const Scalar& c);
  Scalar get(int i, int j) const;
  const std::map<Key, Scalar>& entries() const { return c_; }
  std::size_t size() const { return c_.size(); }
  TensorSquareElement transformed(const std::function<Scalar(const Scalar&)>& f) const;
  friend bool operator==(const TensorSquareElement& x, const TensorSquareElement& y) {
    return x.c_ == y.c_;
  }
  friend bool operator!=(const TensorSquareElement& x, const TensorSquareElement& y) {
    return !(x == y);
  }

 private:
  std::map<Key, Scalar> c_;
};

TensorSquareElement tensor_mul(const AlgebraSpec& a, const TensorSquareElement& u,
                               const TensorSquareElement& v, bool second_factor_opposite = false);
TensorSquareElement tensor_invert(const AlgebraSpec& a, const TensorSquareElement& u);
// Swaps the two tensorands.
TensorSquareElement tensor_flip(const TensorSquareElement& u);

struct QybeWitness {
  int i, j, k;      // basis slot e_i (x) e_j (x) e_k
  Scalar lhs, rhs;  // coefficients of rho12 rho13 rho23 and rho23 rho13 rho12
};
std::optional<QybeWitness> qybe_witness(const AlgebraSpec& a, const TensorSquareElement& rho);
inline bool qybe_check(const AlgebraSpec& a, const TensorSquareElement& rho) {
  return !qybe_witness(a, rho).has_value();
}

// Linear map given by its matrix; column j is the image of e_j.
class AlgebraMap {
 public:
  AlgebraMap() = default;
  explicit AlgebraMap(int dim);
  static AlgebraMap identity(int dim);
  static AlgebraMap diagonal(const std::vector<Scalar>& d);

  int dim() const { return dim_; }
  const Scalar& at(int row, int col) const { return m_[row * dim_ + col]; }
  void set(int row, int col, Scalar v) { m_[row * dim_ + col] = std::move(v); }
  bool is_diagonal() const;
  bool is_identity() const;

  AlgebraElement apply(const AlgebraElement& x) const;
  AlgebraElement image(int j) const;  // column j
  AlgebraMap compose(const AlgebraMap& g) const;  // this o g
  // Entries are passed through the reducer when given (formal roots).
  AlgebraMap inverse(const RootReducer* r = nullptr) const;
  AlgebraMap power(int k, const RootReducer* r = nullptr) const;
  AlgebraMap reduced(const RootReducer& r) const;
  friend bool operator==(const AlgebraMap& x, const AlgebraMap& y) {
    return x.dim_ == y.dim_ && x.m_ == y.m_;
  }
  friend bool operator!=(const AlgebraMap& x, const AlgebraMap& y) { return !(x == y); }

 private:
  int dim_ = 0;
  std::vector<Scalar> m_;
};

bool is_algebra_map(const AlgebraSpec& a, const AlgebraMap& f, const RootReducer* r = nullptr);

TensorSquareElement apply_map_tensor(const AlgebraMap& f, const AlgebraMap& g,
                                     const TensorSquareElement& u);

// Solves m * x = b over the scalar field (m square, row-major sparse rows).
// Returns nullopt when m is singular.
std::optional<std::vector<Scalar>> solve_sparse(int n, std::vector<std::map<int, Scalar>> rows,
                                                std::vector<Scalar> b);

}  // namespace oqa
