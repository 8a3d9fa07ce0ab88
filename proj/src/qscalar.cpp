#include "qint/qscalar.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace qint {

LaurentPoly LaurentPoly::constant(const Rational& r) {
  LaurentPoly p;
  if (sgn(r) != 0) p.c.push_back(r);
  return p;
}

LaurentPoly LaurentPoly::monomial(const Rational& r, long exp) {
  LaurentPoly p;
  if (sgn(r) != 0) {
    p.lo = exp;
    p.c.push_back(r);
  }
  return p;
}

Rational LaurentPoly::coeff(long exp) const {
  if (exp < lo || exp > hi()) return 0;
  return c[static_cast<size_t>(exp - lo)];
}

void LaurentPoly::trim() {
  size_t head = 0;
  while (head < c.size() && sgn(c[head]) == 0) ++head;
  if (head == c.size()) {
    c.clear();
    lo = 0;
    return;
  }
  size_t tail = c.size();
  while (tail > head && sgn(c[tail - 1]) == 0) --tail;
  if (head > 0 || tail < c.size()) {
    c = std::vector<Rational>(c.begin() + head, c.begin() + tail);
    lo += static_cast<long>(head);
  }
}

LaurentPoly LaurentPoly::shifted(long k) const {
  LaurentPoly p = *this;
  if (!p.is_zero()) p.lo += k;
  return p;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  long lo = std::min(a.lo, b.lo), hi = std::max(a.hi(), b.hi());
  LaurentPoly out;
  out.lo = lo;
  out.c.assign(static_cast<size_t>(hi - lo + 1), Rational(0));
  for (size_t i = 0; i < a.c.size(); ++i) out.c[static_cast<size_t>(a.lo - lo) + i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) out.c[static_cast<size_t>(b.lo - lo) + i] += b.c[i];
  out.trim();
  return out;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
  return a + Rational(-1) * b;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  LaurentPoly out;
  out.lo = a.lo + b.lo;
  out.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (sgn(a.c[i]) == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
  }
  out.trim();
  return out;
}

LaurentPoly operator*(const Rational& a, const LaurentPoly& b) {
  if (sgn(a) == 0 || b.is_zero()) return {};
  LaurentPoly out = b;
  for (auto& x : out.c) x *= a;
  return out;
}

namespace {

// ordinary-polynomial helpers on coefficient vectors (lowest degree first)

size_t degree(const std::vector<Rational>& p) { return p.size() - 1; }

void vec_trim(std::vector<Rational>& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// remainder of a by b, b nonzero; both trimmed
std::vector<Rational> vec_rem(std::vector<Rational> a, const std::vector<Rational>& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    vec_trim(a);
  }
  return a;
}

std::vector<Rational> vec_quot(std::vector<Rational> a, const std::vector<Rational>& b) {
  std::vector<Rational> qv(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    size_t shift = a.size() - b.size();
    qv[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    vec_trim(a);
  }
  return qv;
}

void vec_monic(std::vector<Rational>& p) {
  if (p.empty()) return;
  Rational lead = p.back();
  for (auto& x : p) x /= lead;
}

std::vector<Rational> vec_gcd(std::vector<Rational> a, std::vector<Rational> b) {
  vec_trim(a);
  vec_trim(b);
  while (!b.empty()) {
    auto r = vec_rem(a, b);
    a = std::move(b);
    b = std::move(r);
    vec_monic(b);
  }
  vec_monic(a);
  return a;
}

Rational vec_eval1(const std::vector<Rational>& p) {
  Rational s = 0;
  for (const auto& x : p) s += x;
  return s;
}

// multiplicity of the root u = 1, with deflation by synthetic division
long mult_at_one(std::vector<Rational> p, std::vector<Rational>* deflated = nullptr) {
  long m = 0;
  while (!p.empty() && sgn(vec_eval1(p)) == 0) {
    // divide by (u - 1)
    std::vector<Rational> d(p.size() - 1);
    Rational carry = 0;
    for (size_t i = p.size(); i-- > 1;) {
      carry += p[i];
      d[i - 1] = carry;
    }
    p = std::move(d);
    ++m;
  }
  if (deflated) *deflated = std::move(p);
  return m;
}

// truncated power series arithmetic in eps, length n (exponents 0..n-1)
using Series = std::vector<Rational>;

Series series_mul(const Series& a, const Series& b, size_t n) {
  Series out(n, Rational(0));
  for (size_t i = 0; i < a.size() && i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (size_t j = 0; j + i < n && j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Series series_div(const Series& a, const Series& b, size_t n) {
  assert(!b.empty() && sgn(b[0]) != 0);
  Series out(n, Rational(0));
  for (size_t k = 0; k < n; ++k) {
    Rational acc = k < a.size() ? a[k] : Rational(0);
    for (size_t j = 1; j <= k && j < b.size(); ++j) acc -= b[j] * out[k - j];
    out[k] = acc / b[0];
  }
  return out;
}

// series of u^e = (1+eps)^(e/2), truncated to n terms
Series u_power_series(long e, size_t n) {
  Series out(n, Rational(0));
  Rational half_e(e, 2);
  for (size_t k = 0; k < n; ++k) out[k] = binomial(half_e, static_cast<long>(k));
  return out;
}

Series laurent_series(const LaurentPoly& p, size_t n) {
  Series out(n, Rational(0));
  for (size_t i = 0; i < p.c.size(); ++i) {
    if (sgn(p.c[i]) == 0) continue;
    Series term = u_power_series(p.lo + static_cast<long>(i), n);
    for (size_t k = 0; k < n; ++k) out[k] += p.c[i] * term[k];
  }
  return out;
}

}  // namespace

int QuadValue::sign() const {
  if (sgn(b) == 0) return sgn(a);
  if (sgn(a) == 0) return sgn(b);
  if (sgn(a) == sgn(b)) return sgn(a);
  // opposite signs: compare a^2 against b^2 d
  Rational lhs = a * a, rhs = b * b * d;
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  return c > 0 ? sgn(a) : sgn(b);
}

QuadValue QuadValue::operator+(const QuadValue& o) const { return {a + o.a, b + o.b, d}; }
QuadValue QuadValue::operator-(const QuadValue& o) const { return {a - o.a, b - o.b, d}; }
QuadValue QuadValue::operator*(const QuadValue& o) const {
  return {a * o.a + b * o.b * d, a * o.b + b * o.a, d};
}
QuadValue QuadValue::operator/(const QuadValue& o) const {
  Rational nrm = o.a * o.a - o.b * o.b * d;
  if (sgn(nrm) == 0) throw QError("division by zero in quadratic field");
  QuadValue conj{o.a, -o.b, d};
  QuadValue t = *this * conj;
  return {t.a / nrm, t.b / nrm, d};
}

QScalar::QScalar(const Rational& r) : num_(LaurentPoly::constant(r)) {}

QScalar::QScalar(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
  canonicalize();
}

QScalar QScalar::q() { return u_pow(2); }
QScalar QScalar::u() { return u_pow(1); }
QScalar QScalar::q_pow(long k) { return u_pow(2 * k); }
QScalar QScalar::u_pow(long k) {
  QScalar s;
  s.num_ = LaurentPoly::monomial(1, k);
  return s;
}
QScalar QScalar::q_lambda() { return q_pow(1) - q_pow(-1); }

bool QScalar::is_one() const {
  return num_.lo == 0 && num_.c.size() == 1 && num_.c[0] == 1 && den_.c.size() == 1 &&
         den_.c[0] == 1;
}

void QScalar::canonicalize() {
  if (den_.is_zero()) throw QError("zero denominator");
  num_.trim();
  den_.trim();
  if (num_.is_zero()) {
    den_ = LaurentPoly::constant(1);
    return;
  }
  // push the denominator's u-power into the numerator's lo
  num_.lo -= den_.lo;
  den_.lo = 0;
  auto g = vec_gcd(num_.c, den_.c);
  if (g.size() > 1) {
    num_.c = vec_quot(num_.c, g);
    den_.c = vec_quot(den_.c, g);
  }
  Rational lead = den_.c.back();
  if (lead != 1) {
    for (auto& x : num_.c) x /= lead;
    for (auto& x : den_.c) x /= lead;
  }
  num_.trim();
  den_.trim();
  num_.lo -= den_.lo;  // gcd cancellation cannot introduce one, but keep exact
  den_.lo = 0;
}

QScalar QScalar::operator-() const {
  QScalar s = *this;
  for (auto& x : s.num_.c) x = -x;
  return s;
}

QScalar& QScalar::operator+=(const QScalar& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

QScalar& QScalar::operator-=(const QScalar& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

QScalar& QScalar::operator*=(const QScalar& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

QScalar& QScalar::operator/=(const QScalar& o) {
  if (o.is_zero()) throw QError("division by zero");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  canonicalize();
  return *this;
}

QScalar QScalar::inverse() const {
  if (is_zero()) throw QError("division by zero");
  return QScalar(den_, num_);
}

QScalar QScalar::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  QScalar out = 1;
  QScalar base = *this;
  while (k > 0) {
    if (k & 1) out *= base;
    base *= base;
    k >>= 1;
  }
  return out;
}

Expansion QScalar::expand_at_one(long order) const {
  Expansion e;
  if (is_zero()) {
    e.coeffs.assign(static_cast<size_t>(order + 1), Rational(0));
    return e;
  }
  long a = mult_at_one(num_.c);
  long b = mult_at_one(den_.c);
  long n0 = a - b;
  e.lo = std::min(n0, 0L);
  long need = order - n0;  // coefficients of N/D needed beyond its valuation
  if (need < 0) {
    // pole deeper than requested order: still report the full principal part
    need = 0;
  }
  size_t len_num = static_cast<size_t>(a + need + 1);
  size_t len_den = static_cast<size_t>(b + need + 1);
  size_t len = std::max(len_num, len_den);
  Series sn = laurent_series(num_, len);
  Series sd = laurent_series(den_, len);
  sn.erase(sn.begin(), sn.begin() + a);
  sd.erase(sd.begin(), sd.begin() + b);
  Series r = series_div(sn, sd, static_cast<size_t>(need + 1));
  e.coeffs.assign(static_cast<size_t>(order - e.lo + 1), Rational(0));
  for (long k = n0; k <= order; ++k) {
    long idx = k - n0;
    if (idx >= 0 && idx < static_cast<long>(r.size()))
      e.coeffs[static_cast<size_t>(k - e.lo)] = r[static_cast<size_t>(idx)];
  }
  return e;
}

namespace {

QuadValue eval_laurent(const LaurentPoly& p, const Rational& q0) {
  Rational even = 0, odd = 0;
  for (size_t i = 0; i < p.c.size(); ++i) {
    long e = p.lo + static_cast<long>(i);
    long m = (e >= 0) ? e / 2 : -((-e + 1) / 2);  // floor(e/2)
    Rational pw;
    if (m >= 0) {
      mpz_class n, d;
      mpz_pow_ui(n.get_mpz_t(), q0.get_num().get_mpz_t(), static_cast<unsigned long>(m));
      mpz_pow_ui(d.get_mpz_t(), q0.get_den().get_mpz_t(), static_cast<unsigned long>(m));
      pw = Rational(n, d);
    } else {
      mpz_class n, d;
      mpz_pow_ui(n.get_mpz_t(), q0.get_den().get_mpz_t(), static_cast<unsigned long>(-m));
      mpz_pow_ui(d.get_mpz_t(), q0.get_num().get_mpz_t(), static_cast<unsigned long>(-m));
      pw = Rational(n, d);
    }
    pw.canonicalize();
    if ((e % 2 + 2) % 2 == 0)
      even += p.c[i] * pw;
    else
      odd += p.c[i] * pw;
  }
  return {even, odd, q0};
}

}  // namespace

QuadValue QScalar::eval_quad(const Rational& q0) const {
  if (sgn(q0) <= 0) throw QError("evaluation requires q0 > 0");
  QuadValue n = eval_laurent(num_, q0);
  QuadValue d = eval_laurent(den_, q0);
  if (d.a == 0 && d.b == 0) throw QError("evaluation at a pole");
  Rational nrm = d.a * d.a - d.b * d.b * q0;
  if (sgn(nrm) == 0) throw QError("evaluation at a pole");
  return n / d;
}

Rational QScalar::eval_rational(const Rational& q0) const {
  QuadValue v = eval_quad(q0);
  if (v.is_rational()) return v.a;
  if (auto s = rational_sqrt(q0)) return v.a + v.b * *s;
  throw QError("value is irrational at q0 (odd power of q^(1/2))");
}

bool QScalar::analytic_at_one() const {
  if (is_zero()) return true;
  return mult_at_one(num_.c) >= mult_at_one(den_.c);
}

bool QScalar::is_integer_q_power(long* k) const {
  if (num_.c.size() != 1 || num_.c[0] != 1) return false;
  if (den_.c.size() != 1 || den_.c[0] != 1) return false;
  if (num_.lo % 2 != 0) return false;
  if (k) *k = num_.lo / 2;
  return true;
}

namespace {

void append_poly(std::ostringstream& os, const LaurentPoly& p) {
  // prints highest power first; exponents of u rendered as powers of q
  bool first = true;
  for (size_t i = p.c.size(); i-- > 0;) {
    const Rational& coef = p.c[i];
    if (sgn(coef) == 0) continue;
    long e = p.lo + static_cast<long>(i);
    Rational ac = abs(coef);
    if (first) {
      if (sgn(coef) < 0) os << "-";
      first = false;
    } else {
      os << (sgn(coef) < 0 ? " - " : " + ");
    }
    bool unit = (ac == 1) && e != 0;
    if (!unit) os << ac.get_str();
    if (e != 0) {
      if (!unit) os << "*";
      if (e == 2)
        os << "q";
      else if (e % 2 == 0)
        os << "q^" << e / 2;
      else
        os << "q^(" << e << "/2)";
    }
  }
  if (first) os << "0";
}

}  // namespace

std::string QScalar::str() const {
  std::ostringstream os;
  if (den_.c.size() == 1 && den_.c[0] == 1) {
    append_poly(os, num_);
  } else {
    os << "(";
    append_poly(os, num_);
    os << ")/(";
    append_poly(os, den_);
    os << ")";
  }
  return os.str();
}

}  // namespace qint
