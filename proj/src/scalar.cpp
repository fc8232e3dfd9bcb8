#include "oqa/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace oqa {

// ---------------------------------------------------------------- symbols

SymbolTable::SymbolTable(const std::vector<std::string>& names) {
  for (const auto& n : names) declare(n);
}

int SymbolTable::declare(const std::string& name) {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  if (static_cast<int>(names_.size()) >= kMaxVars)
    throw std::length_error("too many symbols (limit " + std::to_string(kMaxVars) + ")");
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
    throw std::invalid_argument("bad symbol name '" + name + "'");
  names_.push_back(name);
  index_.emplace(name, static_cast<int>(names_.size()) - 1);
  return static_cast<int>(names_.size()) - 1;
}

std::optional<int> SymbolTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int SymbolTable::index(std::string_view name) const {
  auto i = find(name);
  if (!i) throw std::invalid_argument("undeclared symbol '" + std::string(name) + "'");
  return *i;
}

// ---------------------------------------------------------------- monomials

Monomial Monomial::var(int v, unsigned power) {
  Monomial m;
  m.e.at(v) = static_cast<std::uint16_t>(power);
  m.deg = power;
  return m;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg > o.deg) return false;
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned(e[i]) + o.e[i];
    if (s > 0xFFFF) throw std::overflow_error("exponent overflow");
    r.e[i] = static_cast<std::uint16_t>(s);
  }
  r.deg = deg + o.deg;
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] - o.e[i]);
  r.deg = deg - o.deg;
  return r;
}

int compare(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
  return 0;
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::min(a.e[i], b.e[i]);
    r.deg += r.e[i];
  }
  return r;
}

// ---------------------------------------------------------------- polynomials

Poly::Poly(long c) {
  if (c != 0) terms_.push_back({Monomial{}, mpz_class(c)});
}

Poly::Poly(const mpz_class& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

Poly Poly::var(int v) { return monomial(Monomial::var(v), 1); }

Poly Poly::monomial(const Monomial& m, const mpz_class& c) {
  Poly p;
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return compare(x.m, y.m) > 0; });
  Poly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().m == t.m) {
      p.terms_.back().c += t.c;
    } else {
      if (!p.terms_.empty() && p.terms_.back().c == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().c == 0) p.terms_.pop_back();
  return p;
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].m.is_one() && terms_[0].c == 1;
}

mpz_class Poly::constant_value() const {
  if (!is_constant()) throw std::logic_error("polynomial is not constant");
  return terms_.empty() ? mpz_class(0) : terms_[0].c;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

namespace {
Poly merge(const Poly& a, const Poly& b, bool subtract) {
  std::vector<Term> out;
  const auto& x = a.terms();
  const auto& y = b.terms();
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    int c = i == x.size() ? -1 : j == y.size() ? 1 : compare(x[i].m, y[j].m);
    if (c > 0) {
      out.push_back(x[i++]);
    } else if (c < 0) {
      out.push_back({y[j].m, subtract ? mpz_class(-y[j].c) : y[j].c});
      ++j;
    } else {
      mpz_class s = subtract ? mpz_class(x[i].c - y[j].c) : mpz_class(x[i].c + y[j].c);
      if (s != 0) out.push_back({x[i].m, s});
      ++i;
      ++j;
    }
  }
  return Poly::from_sorted(std::move(out));
}
}  // namespace

Poly Poly::operator+(const Poly& o) const { return merge(*this, o, false); }
Poly Poly::operator-(const Poly& o) const { return merge(*this, o, true); }

Poly Poly::mul_term(const Monomial& m, const mpz_class& c) const {
  Poly r;
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
  return r;  // multiplication by a monomial preserves the order
}

Poly Poly::mul_scalar(const mpz_class& c) const { return mul_term(Monomial{}, c); }

Poly Poly::div_scalar(const mpz_class& c) const {
  Poly r = *this;
  for (auto& t : r.terms_) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  if (o.terms_.size() == 1) return mul_term(o.terms_[0].m, o.terms_[0].c);
  if (terms_.size() == 1) return o.mul_term(terms_[0].m, terms_[0].c);
  std::vector<Term> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& x : terms_)
    for (const auto& y : o.terms_) out.push_back({x.m * y.m, x.c * y.c});
  return from_terms(std::move(out));
}

Poly Poly::pow(unsigned k) const {
  Poly r(1), b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].m == b.terms_[i].m) || a.terms_[i].c != b.terms_[i].c) return false;
  return true;
}

mpz_class Poly::content() const {
  mpz_class g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Monomial Poly::min_monomial() const {
  if (terms_.empty()) return Monomial{};
  Monomial m = terms_[0].m;
  for (const auto& t : terms_) m = gcd(m, t.m);
  return m;
}

std::uint32_t Poly::mask() const {
  std::uint32_t r = 0;
  for (const auto& t : terms_)
    for (int i = 0; i < kMaxVars; ++i)
      if (t.m.e[i]) r |= 1u << i;
  return r;
}

int Poly::degree_in(int v) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.m.e[v]);
  return d;
}

Poly Poly::coeff_in(int v, int k) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.m.e[v] != k) continue;
    Term s = t;
    s.m.e[v] = 0;
    s.m.deg -= k;
    out.push_back(std::move(s));
  }
  return from_terms(std::move(out));
}

std::string Poly::str(const SymbolTable& st) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    mpz_class c = t.c;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool wrote = false;
    if (c != 1 || t.m.is_one()) {
      os << c.get_str();
      wrote = true;
    }
    for (int i = 0; i < kMaxVars; ++i) {
      if (!t.m.e[i]) continue;
      if (wrote) os << "*";
      os << (i < st.size() ? st.name(i) : "x" + std::to_string(i));
      if (t.m.e[i] > 1) os << "^" << t.m.e[i];
      wrote = true;
    }
  }
  return os.str();
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return Poly();
  if ((b.mask() & ~a.mask()) != 0) return std::nullopt;
  if (b.is_monomial()) {
    const auto& bt = b.lead();
    std::vector<Term> out;
    out.reserve(a.terms().size());
    for (const auto& t : a.terms()) {
      if (!bt.m.divides(t.m) || !mpz_divisible_p(t.c.get_mpz_t(), bt.c.get_mpz_t()))
        return std::nullopt;
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), t.c.get_mpz_t(), bt.c.get_mpz_t());
      out.push_back({t.m / bt.m, q});
    }
    return Poly::from_terms(std::move(out));
  }
  std::vector<Term> q;
  Poly r = a;
  const auto& bl = b.lead();
  while (!r.is_zero()) {
    const auto& rl = r.lead();
    if (!bl.m.divides(rl.m) || !mpz_divisible_p(rl.c.get_mpz_t(), bl.c.get_mpz_t()))
      return std::nullopt;
    Term t{rl.m / bl.m, 0};
    mpz_divexact(t.c.get_mpz_t(), rl.c.get_mpz_t(), bl.c.get_mpz_t());
    r = r - b.mul_term(t.m, t.c);
    q.push_back(std::move(t));
  }
  return Poly::from_terms(std::move(q));
}

namespace {

Poly positive(Poly p) {
  if (!p.is_zero() && p.lc() < 0) return -p;
  return p;
}

Poly exact(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("inexact polynomial division");
  return *q;
}

Poly gcd_primitive(const Poly& a, const Poly& b);

// gcd of the coefficients of p viewed as a polynomial in v.
Poly content_in(const Poly& p, int v) {
  int d = p.degree_in(v);
  Poly g;
  for (int k = d; k >= 0; --k) {
    Poly c = p.coeff_in(v, k);
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Poly prem(const Poly& a, const Poly& b, int v) {
  int db = b.degree_in(v);
  Poly lb = b.coeff_in(v, db);
  Poly r = a;
  while (!r.is_zero()) {
    int dr = r.degree_in(v);
    if (dr < db) break;
    Poly lr = r.coeff_in(v, dr);
    r = r * lb - (lr * b).mul_term(Monomial::var(v, dr - db), 1);
  }
  return r;
}

Poly gcd_primitive(const Poly& a, const Poly& b) {
  if (a.is_constant() || b.is_constant()) return Poly(1);
  Poly pa = positive(a), pb = positive(b);
  if (pa == pb) return pa;
  if (pa.terms().size() <= pb.terms().size()) {
    if (divide_exact(pb, pa)) return pa;
  } else if (divide_exact(pa, pb)) {
    return pb;
  }
  std::uint32_t ma = pa.mask(), mb = pb.mask();
  if ((ma & mb) == 0) return Poly(1);
  for (int v = 0; v < kMaxVars; ++v) {
    std::uint32_t bit = 1u << v;
    if ((ma & bit) && !(mb & bit)) return gcd(content_in(pa, v), pb);
    if ((mb & bit) && !(ma & bit)) return gcd(pa, content_in(pb, v));
  }
  // Main variable: the common one of smallest degree.
  int v = -1, best = 1 << 30;
  for (int i = 0; i < kMaxVars; ++i) {
    if (!((ma & mb) & (1u << i))) continue;
    int d = std::max(pa.degree_in(i), pb.degree_in(i));
    if (d < best) {
      best = d;
      v = i;
    }
  }
  Poly ca = content_in(pa, v), cb = content_in(pb, v);
  Poly c = gcd(ca, cb);
  Poly x = exact(pa, ca), y = exact(pb, cb);
  if (x.degree_in(v) < y.degree_in(v)) std::swap(x, y);
  Poly h;
  for (;;) {
    Poly r = prem(x, y, v);
    if (r.is_zero()) {
      h = y;
      break;
    }
    if (r.degree_in(v) == 0) {
      h = Poly(1);
      break;
    }
    x = std::move(y);
    y = exact(r, content_in(r, v));
  }
  if (!h.is_constant()) h = exact(h, content_in(h, v));
  return positive(c * positive(h));
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return positive(b);
  if (b.is_zero()) return positive(a);
  mpz_class ca = a.content(), cb = b.content(), g;
  mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  Monomial ma = a.min_monomial(), mb = b.min_monomial();
  Monomial gm = gcd(ma, mb);
  if (a.is_monomial() || b.is_monomial()) return Poly::monomial(gm, g);
  Poly pa = a, pb = b;
  if (!ma.is_one() || ca != 1) pa = exact(a, Poly::monomial(ma, ca));
  if (!mb.is_one() || cb != 1) pb = exact(b, Poly::monomial(mb, cb));
  Poly h = gcd_primitive(pa, pb);
  return h.mul_term(gm, g);
}

std::optional<Poly> exact_sqrt(const Poly& p) {
  if (p.is_zero()) return Poly();
  const Term& l = p.lead();
  if (l.c < 0 || !mpz_perfect_square_p(l.c.get_mpz_t())) return std::nullopt;
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) {
    if (l.m.e[i] % 2) return std::nullopt;
    m.e[i] = l.m.e[i] / 2;
  }
  m.deg = l.m.deg / 2;
  mpz_class c = sqrt(l.c);
  Poly s = Poly::monomial(m, c);
  Poly r = p - s * s;
  Monomial last = m;
  const mpz_class two_c = 2 * c;
  while (!r.is_zero()) {
    const Term& rl = r.lead();
    if (!m.divides(rl.m) || !mpz_divisible_p(rl.c.get_mpz_t(), two_c.get_mpz_t()))
      return std::nullopt;
    Term t{rl.m / m, 0};
    mpz_divexact(t.c.get_mpz_t(), rl.c.get_mpz_t(), two_c.get_mpz_t());
    if (compare(t.m, last) >= 0) return std::nullopt;
    Poly tp = Poly::monomial(t.m, t.c);
    r = r - (s.mul_scalar(2) + tp) * tp;
    s = s + tp;
    last = t.m;
  }
  return s;
}

// ---------------------------------------------------------------- scalars

Scalar::Scalar(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  if (c.get_den() == 0) throw std::domain_error("division by zero");
  num_ = Poly(c.get_num());
  den_ = Poly(c.get_den());
}

Scalar::Scalar(const Poly& num) : num_(num), den_(1) {}

Scalar::Scalar(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (num.is_zero()) {
    num_ = Poly();
    den_ = Poly(1);
    return;
  }
  if (den.is_one()) {
    num_ = num;
    den_ = den;
    return;
  }
  Poly g = gcd(num, den);
  num_ = g.is_one() ? num : exact(num, g);
  den_ = g.is_one() ? den : exact(den, g);
  if (den_.lc() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

mpq_class Scalar::constant_value() const {
  if (!is_constant()) throw std::logic_error("scalar is not constant");
  mpq_class q(num_.constant_value(), den_.constant_value());
  q.canonicalize();
  return q;
}

Scalar Scalar::operator-() const { return Scalar(Raw{}, -num_, den_); }

Scalar Scalar::operator+(const Scalar& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_.is_one() && o.den_.is_one()) return Scalar(Raw{}, num_ + o.num_, den_);
  if (den_ == o.den_) return Scalar(num_ + o.num_, den_);
  Poly g = gcd(den_, o.den_);
  Poly b1 = exact(den_, g), d1 = exact(o.den_, g);
  Poly n = num_ * d1 + o.num_ * b1;
  if (n.is_zero()) return Scalar();
  Poly d = b1 * o.den_;
  if (!g.is_one()) {
    Poly g2 = gcd(n, g);
    if (!g2.is_one()) {
      n = exact(n, g2);
      d = exact(d, g2);
    }
  }
  if (d.lc() < 0) {
    n = -n;
    d = -d;
  }
  return Scalar(Raw{}, std::move(n), std::move(d));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return Scalar();
  if (den_.is_one() && o.den_.is_one()) return Scalar(Raw{}, num_ * o.num_, den_);
  Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  Poly a = g1.is_one() ? num_ : exact(num_, g1);
  Poly d = g1.is_one() ? o.den_ : exact(o.den_, g1);
  Poly c = g2.is_one() ? o.num_ : exact(o.num_, g2);
  Poly b = g2.is_one() ? den_ : exact(den_, g2);
  Poly n = a * c, m = b * d;
  if (m.lc() < 0) {
    n = -n;
    m = -m;
  }
  return Scalar(Raw{}, std::move(n), std::move(m));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero scalar");
  if (num_.lc() < 0) return Scalar(Raw{}, -den_, -num_);
  return Scalar(Raw{}, den_, num_);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  return Scalar(Raw{}, num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)));
}

std::string Scalar::str(const SymbolTable& st) const {
  if (den_.is_one()) return num_.str(st);
  auto wrap = [&](const Poly& p) {
    std::string s = p.str(st);
    bool bare = p.terms().size() == 1 && (p.lc() == 1 || p.lead().m.is_one()) && p.lc() > 0;
    return bare ? s : "(" + s + ")";
  };
  // a denominator product must stay grouped when parsed back
  std::string d = wrap(den_);
  if (d.front() != '(' && d.find('*') != std::string::npos) d = "(" + d + ")";
  return wrap(num_) + " / " + d;
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  Parser(std::string_view s, SymbolTable* mut, const SymbolTable& st)
      : s_(s), mut_(mut), st_(st) {}

  Scalar run() {
    Scalar v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& m) const {
    throw ParseError("scalar parse error at column " + std::to_string(i_ + 1) + ": " + m);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  Scalar expr() {
    Scalar v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  Scalar term() {
    Scalar v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        Scalar d = unary();
        if (d.is_zero()) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }
  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  Scalar power() {
    Scalar b = atom();
    if (eat('^')) {
      bool neg = eat('-');
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("expected integer exponent");
      long k = std::stol(std::string(s_.substr(st, i_ - st)));
      if (neg) k = -k;
      if (k < 0 && b.is_zero()) fail("zero to a negative power");
      return b.pow(k);
    }
    return b;
  }
  Scalar atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Scalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return Scalar(Poly(mpz_class(std::string(s_.substr(st, i_ - st)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = i_;
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        ++i_;
      std::string name(s_.substr(st, i_ - st));
      auto idx = st_.find(name);
      if (!idx) {
        if (!mut_) throw std::invalid_argument("undeclared symbol '" + name + "'");
        idx = mut_->declare(name);
      }
      return Scalar::var(*idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
  SymbolTable* mut_;
  const SymbolTable& st_;
};

}  // namespace

Scalar parse_scalar(std::string_view text, SymbolTable& st, bool declare_new) {
  return Parser(text, declare_new ? &st : nullptr, st).run();
}

Scalar parse_scalar(std::string_view text, const SymbolTable& st) {
  return Parser(text, nullptr, st).run();
}

// ---------------------------------------------------------------- substitution

namespace {
Scalar eval_poly(const Poly& p, const Bindings& b) {
  std::map<std::pair<int, int>, Scalar> cache;
  auto power = [&](int v, int e) -> Scalar {
    auto key = std::make_pair(v, e);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    auto bi = b.find(v);
    Scalar base = bi == b.end() ? Scalar::var(v) : bi->second;
    Scalar r = base.pow(e);
    cache.emplace(key, r);
    return r;
  };
  Scalar acc;
  for (const auto& t : p.terms()) {
    Scalar term(Poly(t.c));
    Monomial rest;
    for (int v = 0; v < kMaxVars; ++v) {
      if (!t.m.e[v]) continue;
      if (b.count(v)) {
        term *= power(v, t.m.e[v]);
      } else {
        rest.e[v] = t.m.e[v];
        rest.deg += t.m.e[v];
      }
    }
    acc += term * Scalar(Poly::monomial(rest, 1));
  }
  return acc;
}
}  // namespace

Scalar substitute(const Scalar& s, const Bindings& b) {
  if (b.empty()) return s;
  Scalar n = eval_poly(s.num(), b);
  Scalar d = eval_poly(s.den(), b);
  if (d.is_zero()) throw std::domain_error("substitution makes a denominator identically zero");
  return n / d;
}

std::optional<Scalar> exact_sqrt(const Scalar& s) {
  auto n = exact_sqrt(s.num());
  if (!n) return std::nullopt;
  auto d = exact_sqrt(s.den());
  if (!d) return std::nullopt;
  return Scalar(*n, *d);
}

// ---------------------------------------------------------------- Laurent

std::optional<LaurentView> laurent_view(const Scalar& s, int nvars) {
  if (!s.den().is_monomial()) return std::nullopt;
  const Term& d = s.den().lead();
  LaurentView v;
  for (const auto& t : s.num().terms()) {
    std::vector<int> e(nvars);
    for (int i = 0; i < nvars; ++i) e[i] = int(t.m.e[i]) - int(d.m.e[i]);
    mpq_class c(t.c, d.c);
    c.canonicalize();
    v.terms[e] = c;
  }
  return v;
}

std::optional<int> laurent_homogeneous_degree(const Scalar& s, const std::vector<int>& vars) {
  auto degree = [&](const Monomial& m) {
    int d = 0;
    for (int v : vars) d += m.e[v];
    return d;
  };
  auto restricted = [&](const Monomial& m) {
    std::vector<int> r;
    for (int v : vars) r.push_back(m.e[v]);
    return r;
  };
  const auto& dt = s.den().terms();
  auto ref = restricted(dt.front().m);
  for (const auto& t : dt)
    if (restricted(t.m) != ref)
      throw std::invalid_argument("scalar is not a Laurent polynomial in the given symbols");
  int dd = degree(dt.front().m);
  if (s.is_zero()) return std::nullopt;
  std::optional<int> deg;
  for (const auto& t : s.num().terms()) {
    int d = degree(t.m) - dd;
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

// ---------------------------------------------------------------- roots

void RootReducer::add(int symbol, Scalar radicand) {
  for (const auto& [s, r] : roots_)
    if (s == symbol) throw std::invalid_argument("root symbol registered twice");
  if (radicand.mask() & (1u << symbol))
    throw std::invalid_argument("radicand mentions its own root symbol");
  roots_.emplace_back(symbol, std::move(radicand));
}

Scalar RootReducer::reduce_poly(const Poly& p) const {
  bool needed = false;
  for (const auto& t : p.terms())
    for (const auto& [s, r] : roots_)
      if (t.m.e[s] >= 2) needed = true;
  if (!needed) return Scalar(p);
  Scalar acc;
  for (const auto& t : p.terms()) {
    Monomial m = t.m;
    Scalar f(Poly(t.c));
    for (const auto& [s, r] : roots_) {
      unsigned e = m.e[s];
      if (e < 2) continue;
      f *= r.pow(e / 2);
      m.deg -= e - e % 2;
      m.e[s] = static_cast<std::uint16_t>(e % 2);
    }
    acc += f * Scalar(Poly::monomial(m, 1));
  }
  return acc;
}

Scalar RootReducer::reduce(const Scalar& s) const {
  if (roots_.empty()) return s;
  std::uint32_t rm = 0;
  for (const auto& [sym, r] : roots_) rm |= 1u << sym;
  if ((s.mask() & rm) == 0) return s;
  auto red = [&](const Scalar& x) { return reduce_poly(x.num()) / reduce_poly(x.den()); };
  // Radicands are root-free, so only numerators ever carry root symbols.
  Scalar n = reduce_poly(s.num());
  Scalar d = reduce_poly(s.den());
  // Clearing one root can reintroduce another through the conjugate's
  // coefficients, so sweep until the denominator is root-free.
  for (int pass = 0; (d.mask() & rm) && pass < 64; ++pass) {
    for (const auto& [sym, r] : roots_) {
      const Poly& dn = d.num();
      if (!(dn.mask() & (1u << sym))) continue;
      Scalar conj = Scalar(dn.coeff_in(sym, 0)) - Scalar(dn.coeff_in(sym, 1)) * Scalar::var(sym);
      n = red(n * conj);
      d = red(d * conj);
    }
  }
  return red(n / d);
}

}  // namespace oqa
