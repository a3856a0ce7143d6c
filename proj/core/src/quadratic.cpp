#include "ostrowski/quadratic.hpp"

#include <cmath>
#include <sstream>

#include "ostrowski/error.hpp"

namespace ostrowski {
namespace {

double mpz_to_double_2exp(const Integer& v, long& exp) {
  return mpz_get_d_2exp(&exp, v.get_mpz_t());
}

}  // namespace

double ratio_to_double(const Integer& num, const Integer& den) {
  if (num == 0) return 0.0;
  long en = 0;
  long ed = 0;
  const double mn = mpz_to_double_2exp(num, en);
  const double md = mpz_to_double_2exp(den, ed);
  return std::ldexp(mn / md, static_cast<int>(en - ed));
}

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

int sign_of_surd(const Integer& u, const Integer& v, const Integer& d) {
  const int su = sgn(u);
  const int sv = sgn(v);
  if (sv == 0) return su;
  if (su == 0 || su == sv) return sv;
  // Opposite signs: compare u^2 with v^2 d; equality is impossible for
  // non-square d.
  const Integer lhs = u * u;
  const Integer rhs = v * v * d;
  return lhs > rhs ? su : sv;
}

QuadraticSurd::QuadraticSurd(Integer a, Integer b, Integer c, Integer d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (c_ == 0) fail(ErrorCode::kInvalidArgument, "quadratic surd with zero denominator");
  normalize();
}

void QuadraticSurd::normalize() {
  if (c_ < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
}

int QuadraticSurd::sign() const { return sign_of_surd(a_, b_, d_); }

Integer QuadraticSurd::floor() const {
  Integer num;
  if (b_ == 0) {
    num = a_;
  } else {
    const Integer s = isqrt(b_ * b_ * d_);
    // b√d is irrational, so floor(a - t) = a - floor(t) - 1 when b < 0.
    num = b_ > 0 ? Integer(a_ + s) : Integer(a_ - s - 1);
  }
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), c_.get_mpz_t());
  return q;
}

QuadraticSurd QuadraticSurd::operator+(const QuadraticSurd& o) const {
  return QuadraticSurd(a_ * o.c_ + o.a_ * c_, b_ * o.c_ + o.b_ * c_, c_ * o.c_, d_);
}

QuadraticSurd QuadraticSurd::operator-(const QuadraticSurd& o) const { return *this + (-o); }

QuadraticSurd QuadraticSurd::operator*(const QuadraticSurd& o) const {
  return QuadraticSurd(a_ * o.a_ + b_ * o.b_ * d_, a_ * o.b_ + b_ * o.a_, c_ * o.c_, d_);
}

QuadraticSurd QuadraticSurd::operator-() const { return QuadraticSurd(-a_, -b_, c_, d_); }

QuadraticSurd QuadraticSurd::operator*(const Integer& k) const {
  return QuadraticSurd(a_ * k, b_ * k, c_, d_);
}

QuadraticSurd QuadraticSurd::operator+(const Integer& k) const {
  return QuadraticSurd(a_ + k * c_, b_, c_, d_);
}

QuadraticSurd QuadraticSurd::operator-(const Integer& k) const { return *this + Integer(-k); }

QuadraticSurd QuadraticSurd::operator*(const Rational& r) const {
  return QuadraticSurd(a_ * r.get_num(), b_ * r.get_num(), c_ * r.get_den(), d_);
}

QuadraticSurd QuadraticSurd::operator-(const Rational& r) const {
  return *this - rational(r, d_);
}

std::strong_ordering QuadraticSurd::compare(const Rational& r) const {
  const int s = (*this - r).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::strong_ordering QuadraticSurd::compare(const QuadraticSurd& o) const {
  const int s = (*this - o).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

double QuadraticSurd::to_double() const {
  if (b_ == 0) return ratio_to_double(a_, c_);
  const double root = std::sqrt(d_.get_d());
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sa == 0 || sa == sb) {
    long ea = 0;
    long eb = 0;
    long ec = 0;
    const double ma = mpz_get_d_2exp(&ea, a_.get_mpz_t());
    const double mb = mpz_get_d_2exp(&eb, b_.get_mpz_t());
    const double mc = mpz_get_d_2exp(&ec, c_.get_mpz_t());
    // Rescale both terms to a common exponent before adding.
    const long e = std::max(ea, eb);
    const double sum = std::ldexp(ma, static_cast<int>(ea - e)) +
                       std::ldexp(mb, static_cast<int>(eb - e)) * root;
    return std::ldexp(sum / mc, static_cast<int>(e - ec));
  }
  // a + b√d = (a² - b²d) / (a - b√d), and a - b√d has no cancellation.
  const Integer norm = a_ * a_ - b_ * b_ * d_;
  const QuadraticSurd conj(a_, -b_, c_, d_);
  const double conj_value = conj.to_double();  // (a - b√d)/c
  // value = norm / (c · (a - b√d)) = norm / (c² · conj_value)
  return ratio_to_double(norm, c_ * c_) / conj_value;
}

std::string QuadraticSurd::to_string() const {
  std::ostringstream os;
  os << "(" << a_.get_str() << (b_ < 0 ? " - " : " + ") << Integer(::abs(b_)).get_str() << "*sqrt("
     << d_.get_str() << "))/" << c_.get_str();
  return os.str();
}

bool QuadraticSurd::operator==(const QuadraticSurd& o) const {
  return d_ == o.d_ && a_ == o.a_ && b_ == o.b_ && c_ == o.c_;
}

}  // namespace ostrowski
