#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "oqa/diagram.hpp"
#include "oqa/invariant.hpp"
#include "oqa/oqa.hpp"

namespace oqa {

// Whether an xp slice is the positive crossing L+ of the skein relation.
// Fixed by the skein triple test; the over strand is then the first tensorand.
inline constexpr bool kCrossPosIsSkeinPositive = true;

int crossing_sign(SliceKind k);  // +1 for L+, -1 for L-
int skein_writhe(const MorseDiagram& d);

// Laurent polynomial in alpha and z with integer coefficients.
class SkeinPoly {
 public:
  using Key = std::pair<int, int>;  // (alpha exponent, z exponent)
  SkeinPoly() = default;
  explicit SkeinPoly(long c);
  static SkeinPoly monomial(int alpha_exp, int z_exp, long c = 1);

  bool is_zero() const { return t_.empty(); }
  const std::map<Key, mpz_class>& terms() const { return t_; }
  SkeinPoly operator+(const SkeinPoly& o) const;
  SkeinPoly operator-(const SkeinPoly& o) const;
  SkeinPoly operator*(const SkeinPoly& o) const;
  SkeinPoly pow(unsigned k) const;
  friend bool operator==(const SkeinPoly&, const SkeinPoly&) = default;

  SkeinPoly at_alpha_one() const;
  Scalar evaluate(const Scalar& alpha, const Scalar& z) const;
  // e.g. "z^2 + 1", "alpha^-1*z - 2*alpha"; terms by descending z then alpha.
  std::string str() const;

 private:
  void add(Key k, const mpz_class& c);
  std::map<Key, mpz_class> t_;
};

// Regular isotopy HOMFLY: H(L+) - H(L-) = z H(L0), H(curl) = alpha^{+-1} H,
// H(unknot) = 1. Closed diagrams only; the empty diagram gives 1.
SkeinPoly homfly(const MorseDiagram& d);
// Conway polynomial in z (alpha exponents all zero).
SkeinPoly conway(const MorseDiagram& d);
void clear_skein_cache();

struct SingleBlockContext {
  int n = 0;
  Scalar a, sbc, q, r;
  std::vector<bool> same;  // a_i == a
  std::vector<Scalar> a_i;
  int eta_plus(int l, int m) const;
  int eta_minus(int l, int m) const;
  int eta() const { return eta_plus(0, n) - eta_minus(0, n); }
  // omega_i(x)^2 with the sign pattern of a_1..a_n; i is 1-based.
  Scalar omega_sq(int i, const Scalar& x) const;
  Scalar tr_g, tr_g_inv, hbar, kappa, rho_norm;
  MnParams params;
  Structure structure;
  std::vector<Scalar> trace;
};

// Single block ordered 1..n with a_i in {a, -bc/a}, a = a_1, bc = sbc^2 and
// G = sum omega_i(r)^2 E_ii. x holds rho_ilil for i < l.
MnParams single_block_params(int n, const Scalar& a, const Scalar& sbc, const std::vector<bool>& same,
                         const PairTable& x);
// Throws std::invalid_argument on multi-block or otherwise unsuitable input,
// std::logic_error if a consistency identity fails.
SingleBlockContext single_block_context(const MnParams& p, const Scalar& sbc, SymbolTable& st);

enum class CurlFamily { RPlus, RMinus, LPlus, LMinus };
const char* family_builtin(CurlFamily f);  // name of the builtin diagram family
Scalar curl_family_value(const SingleBlockContext& ctx, CurlFamily f, int m);

struct IdentifyReport {
  bool pass = false;
  bool alexander_branch = false;
  int writhe = 0, wd = 0;
  SkeinPoly poly;  // H or Conway
  Scalar lhs, rhs;
};
IdentifyReport identify_F(const SingleBlockContext& ctx, const MorseDiagram& d, const Scalar& f_value);

// Closes a one-strand tangle on the left: cup_ccw 0 / T shifted right / cap_ccw 0.
MorseDiagram close_left(const MorseDiagram& t);

// Cut-open form, usable when Tr G = 0 kills every closed value: for a tangle T
// with one open strand and no loops, w(T) should be
// a^wr q^-wr rho_norm^-Wd(T) P(closure) G^Wd(T), P being H or Conway as above.
struct OpenIdentifyReport {
  bool pass = false;
  bool alexander_branch = false;
  int writhe = 0, wd = 0;
  SkeinPoly poly;
  AlgebraElement lhs, rhs;
};
OpenIdentifyReport identify_open(const SingleBlockContext& ctx, const MorseDiagram& t, const AlgebraElement& w);

struct SkeinReport {
  bool pass = false;
  Scalar g_plus, g_minus, g_zero;
};
// The three diagrams must agree except at one slice, where d1 and d2 carry the
// two crossing types and d0 has no slice. Throws std::invalid_argument otherwise.
SkeinReport skein_triple_check(const SingleBlockContext& ctx, const MorseDiagram& d1, const MorseDiagram& d2,
                               const MorseDiagram& d0);
// (xp, xn, smoothed) at crossing slice k.
struct SkeinTriple {
  MorseDiagram pos, neg, zero;
};
SkeinTriple skein_triple(const MorseDiagram& d, int k);

}  // namespace oqa
