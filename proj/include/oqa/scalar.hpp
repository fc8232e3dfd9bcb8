#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace oqa {

inline constexpr int kMaxVars = 24;

class SymbolTable {
 public:
  SymbolTable() = default;
  explicit SymbolTable(const std::vector<std::string>& names);

  // Returns the index of name, declaring it if new.
  int declare(const std::string& name);
  std::optional<int> find(std::string_view name) const;
  int index(std::string_view name) const;  // throws if undeclared
  const std::string& name(int idx) const { return names_.at(idx); }
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

struct Monomial {
  std::uint32_t deg = 0;
  std::array<std::uint16_t, kMaxVars> e{};

  static Monomial var(int v, unsigned power = 1);
  bool is_one() const { return deg == 0; }
  bool divides(const Monomial& o) const;
  Monomial operator*(const Monomial& o) const;
  Monomial operator/(const Monomial& o) const;  // requires divides
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.deg == b.deg && a.e == b.e;
  }
};

// Degree-lexicographic: higher total degree first, ties broken by exponent of
// variable 0, then 1, ...
int compare(const Monomial& a, const Monomial& b);
Monomial gcd(const Monomial& a, const Monomial& b);

struct Term {
  Monomial m;
  mpz_class c;
};

// Sparse polynomial with integer coefficients, terms sorted descending.
class Poly {
 public:
  Poly() = default;
  explicit Poly(long c);
  explicit Poly(const mpz_class& c);
  static Poly var(int v);
  static Poly monomial(const Monomial& m, const mpz_class& c);
  static Poly from_terms(std::vector<Term> terms);  // sorts and combines
  // Caller guarantees strictly descending monomials and no zero coefficients.
  static Poly from_sorted(std::vector<Term> terms) {
    Poly p;
    p.terms_ = std::move(terms);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }
  mpz_class constant_value() const;  // requires is_constant
  const std::vector<Term>& terms() const { return terms_; }
  const Term& lead() const { return terms_.front(); }
  const mpz_class& lc() const { return terms_.front().c; }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly mul_term(const Monomial& m, const mpz_class& c) const;
  Poly mul_scalar(const mpz_class& c) const;
  Poly div_scalar(const mpz_class& c) const;  // exact
  Poly pow(unsigned k) const;
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  mpz_class content() const;     // positive gcd of coefficients, 0 for zero
  Monomial min_monomial() const; // componentwise min exponents
  std::uint32_t mask() const;    // bit v set iff variable v occurs
  int degree_in(int v) const;
  Poly coeff_in(int v, int k) const;  // coefficient of v^k, free of v

  std::string str(const SymbolTable& st) const;

 private:
  std::vector<Term> terms_;
};

std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);  // leading coefficient positive
std::optional<Poly> exact_sqrt(const Poly& p);

// Element of Q(x_1..x_k): canonical reduced fraction.
class Scalar {
 public:
  Scalar() : num_(), den_(1) {}
  Scalar(long c) : num_(c), den_(1) {}  // NOLINT(implicit)
  Scalar(const mpq_class& q);           // NOLINT(implicit)
  Scalar(const Poly& num);              // NOLINT(implicit)
  Scalar(const Poly& num, const Poly& den);  // canonicalizes; throws on zero den
  static Scalar var(int v) { return Scalar(Poly::var(v)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  mpq_class constant_value() const;  // requires is_constant

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  friend Scalar operator+(long a, const Scalar& b) { return Scalar(a) + b; }
  friend Scalar operator-(long a, const Scalar& b) { return Scalar(a) - b; }
  friend Scalar operator*(long a, const Scalar& b) { return Scalar(a) * b; }
  friend Scalar operator/(long a, const Scalar& b) { return Scalar(a) / b; }
  Scalar inverse() const;
  Scalar pow(long k) const;
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::uint32_t mask() const { return num_.mask() | den_.mask(); }
  std::string str(const SymbolTable& st) const;

 private:
  struct Raw {};
  Scalar(Raw, Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {}
  Poly num_;
  Poly den_;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses +, -, *, /, ^ (integer exponents), parentheses, integers and declared
// symbols. With declare_new, unknown identifiers are added to the table.
Scalar parse_scalar(std::string_view text, SymbolTable& st, bool declare_new = false);
Scalar parse_scalar(std::string_view text, const SymbolTable& st);

using Bindings = std::map<int, Scalar>;
Scalar substitute(const Scalar& s, const Bindings& b);

std::optional<Scalar> exact_sqrt(const Scalar& s);

// Laurent polynomial view: exponent vectors may be negative.
struct LaurentView {
  std::map<std::vector<int>, mpq_class> terms;
};
std::optional<LaurentView> laurent_view(const Scalar& s, int nvars);

// Total degree in vars when every term has the same degree, treating the
// remaining symbols as coefficients. Throws when s is not Laurent in vars.
std::optional<int> laurent_homogeneous_degree(const Scalar& s, const std::vector<int>& vars);

// Formal square roots: symbol w with w^2 = radicand. Reduction brings each w
// to degree <= 1 and clears w from denominators.
class RootReducer {
 public:
  void add(int symbol, Scalar radicand);
  bool empty() const { return roots_.empty(); }
  Scalar reduce(const Scalar& s) const;
  const std::vector<std::pair<int, Scalar>>& roots() const { return roots_; }

 private:
  Scalar reduce_poly(const Poly& p) const;
  std::vector<std::pair<int, Scalar>> roots_;
};

}  // namespace oqa
