#pragma once

// Exact arithmetic in the field of rational functions of the deformation
// parameter.  The internal variable is u = q^(1/2): the orthogonal series'
// structure constants contain half-integer powers of q for odd N, so the
// natural coefficient field is Q(u) with q = u^2.  Every exponent stored
// here is an exponent of u.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qint/rational.hpp"

namespace qint {

struct QError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// dense Laurent polynomial: c[0]*u^lo + c[1]*u^(lo+1) + ...
// invariant: c empty iff zero; otherwise c.front() != 0 and c.back() != 0
struct LaurentPoly {
  long lo = 0;
  std::vector<Rational> c;

  static LaurentPoly zero() { return {}; }
  static LaurentPoly constant(const Rational& r);
  static LaurentPoly monomial(const Rational& r, long exp);

  bool is_zero() const { return c.empty(); }
  long hi() const { return lo + static_cast<long>(c.size()) - 1; }
  Rational coeff(long exp) const;
  void trim();

  LaurentPoly shifted(long k) const;  // multiply by u^k
  bool operator==(const LaurentPoly& o) const { return lo == o.lo && c == o.c; }
};

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator*(const Rational& a, const LaurentPoly& b);

// value in the real quadratic extension Q(sqrt(d)): a + b*sqrt(d), d > 0 not
// necessarily a square.  Used for exact evaluation of half-integer q-powers.
struct QuadValue {
  Rational a, b, d;

  QuadValue(Rational a_, Rational b_, Rational d_)
      : a(std::move(a_)), b(std::move(b_)), d(std::move(d_)) {}
  bool is_rational() const { return sgn(b) == 0; }
  int sign() const;
  QuadValue operator+(const QuadValue& o) const;
  QuadValue operator-(const QuadValue& o) const;
  QuadValue operator*(const QuadValue& o) const;
  QuadValue operator/(const QuadValue& o) const;
  bool operator==(const QuadValue& o) const { return a == o.a && b == o.b; }
};

// truncated (q-1)-expansion; lo < 0 reports a pole of order -lo at q = 1.
// coeffs run from exponent lo to the requested order inclusive.
struct Expansion {
  long lo = 0;
  std::vector<Rational> coeffs;
  bool has_pole() const { return lo < 0; }
};

class QScalar {
 public:
  QScalar() = default;                       // zero
  QScalar(long n) : QScalar(Rational(n)) {}  // NOLINT: deliberately implicit
  QScalar(const Rational& r);                // NOLINT
  QScalar(LaurentPoly num, LaurentPoly den);

  static QScalar q();                // u^2
  static QScalar u();                // q^(1/2)
  static QScalar q_pow(long k);      // q^k
  static QScalar u_pow(long k);      // q^(k/2)
  static QScalar q_lambda();         // q - q^(-1)

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }

  QScalar operator-() const;
  QScalar& operator+=(const QScalar& o);
  QScalar& operator-=(const QScalar& o);
  QScalar& operator*=(const QScalar& o);
  QScalar& operator/=(const QScalar& o);
  bool operator==(const QScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const QScalar& o) const { return !(*this == o); }

  QScalar pow(long k) const;
  QScalar inverse() const;

  // Laurent expansion in (q-1) with coefficients for exponents <= order
  Expansion expand_at_one(long order) const;

  // exact value at a rational q0 > 0 (u = sqrt(q0)); throws at poles
  QuadValue eval_quad(const Rational& q0) const;
  // exact rational value; throws if the value is irrational at q0 or at a pole
  Rational eval_rational(const Rational& q0) const;

  // pole-freedom at q = 1 (denominator nonvanishing at u = 1)
  bool analytic_at_one() const;

  // monomial u^(2k) test; used for "integer power of q" structure checks
  bool is_integer_q_power(long* k = nullptr) const;

  std::string str() const;  // human form, in q where exponents allow

 private:
  void canonicalize();
  LaurentPoly num_ = LaurentPoly::zero();
  LaurentPoly den_ = LaurentPoly::constant(1);
};

inline QScalar operator+(QScalar a, const QScalar& b) { return a += b; }
inline QScalar operator-(QScalar a, const QScalar& b) { return a -= b; }
inline QScalar operator*(QScalar a, const QScalar& b) { return a *= b; }
inline QScalar operator/(QScalar a, const QScalar& b) { return a /= b; }

}  // namespace qint
