#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace ostrowski {

using Integer = mpz_class;
using Rational = mpq_class;

/// Converts num/den to the nearest-ish double without overflowing on huge
/// operands. Relative error is a few ulps.
double ratio_to_double(const Integer& num, const Integer& den);

/// Element (a + b·√d)/c of the real quadratic field Q(√d), with c > 0 and d a
/// positive non-square. All arithmetic is exact; comparisons reduce to integer
/// square comparisons.
class QuadraticSurd {
 public:
  QuadraticSurd() = default;
  QuadraticSurd(Integer a, Integer b, Integer c, Integer d);

  static QuadraticSurd integer(const Integer& v, const Integer& d) {
    return QuadraticSurd(v, 0, 1, d);
  }
  static QuadraticSurd rational(const Rational& v, const Integer& d) {
    return QuadraticSurd(v.get_num(), 0, v.get_den(), d);
  }

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  const Integer& c() const { return c_; }
  const Integer& d() const { return d_; }

  /// -1, 0 or +1.
  int sign() const;
  Integer floor() const;

  QuadraticSurd operator+(const QuadraticSurd& o) const;
  QuadraticSurd operator-(const QuadraticSurd& o) const;
  QuadraticSurd operator*(const QuadraticSurd& o) const;
  QuadraticSurd operator-() const;
  QuadraticSurd operator*(const Integer& k) const;
  QuadraticSurd operator+(const Integer& k) const;
  QuadraticSurd operator-(const Integer& k) const;
  QuadraticSurd operator*(const Rational& r) const;
  QuadraticSurd operator-(const Rational& r) const;

  QuadraticSurd abs() const { return sign() < 0 ? -*this : *this; }

  /// Exact comparison against a rational.
  std::strong_ordering compare(const Rational& r) const;
  std::strong_ordering compare(const QuadraticSurd& o) const;

  /// Relative error at most a few ulps, i.e. far below 2^-50, including when
  /// a and b·√d nearly cancel (handled through the conjugate).
  double to_double() const;

  std::string to_string() const;

  bool operator==(const QuadraticSurd& o) const;

 private:
  void normalize();

  Integer a_ = 0;
  Integer b_ = 0;
  Integer c_ = 1;
  Integer d_ = 2;
};

/// Sign of u + v·√d for integers u, v and non-square d > 0.
int sign_of_surd(const Integer& u, const Integer& v, const Integer& d);

/// floor(sqrt(n)) for n >= 0.
Integer isqrt(const Integer& n);
bool is_perfect_square(const Integer& n);

}  // namespace ostrowski
