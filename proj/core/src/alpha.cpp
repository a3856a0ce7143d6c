#include "ostrowski/alpha.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ostrowski/error.hpp"

namespace ostrowski {
namespace {

// Normalized (P, D, Q) with Q | D - P^2, as the periodic expansion requires.
Surd normalize_surd(const Surd& s) {
  Surd out = s;
  const Integer rem = (out.D - out.P * out.P) % out.Q;
  if (rem != 0) {
    const Integer aq = abs(out.Q);
    out.P *= aq;
    out.D *= out.Q * out.Q;
    out.Q *= aq;
  }
  return out;
}

QuadraticSurd surd_value(const Surd& s) { return QuadraticSurd(s.P, 1, s.Q, s.D); }

std::vector<Integer> surd_quotients(const Surd& spec, std::size_t n) {
  Surd s = normalize_surd(spec);
  std::vector<Integer> out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const Integer a = QuadraticSurd(s.P, 1, s.Q, s.D).floor();
    out.push_back(a);
    const Integer next_p = a * s.Q - s.P;
    const Integer next_q = (s.D - next_p * next_p) / s.Q;
    s.P = next_p;
    s.Q = next_q;
  }
  return out;
}

const Rational kHalf(1, 2);

// Signed fractional part of a value known to lie in the open interval
// (lo, hi), if the interval pins down both floor and half-side and the
// relative width is below 2^-51.
std::optional<RationalInterval> certify_signed_frac(const Rational& lo, const Rational& hi) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (hi > Rational(f + 1)) return std::nullopt;
  const Rational half_point = Rational(f) + kHalf;
  if (lo < half_point && hi > half_point) return std::nullopt;
  RationalInterval r;
  if (hi <= half_point) {
    r.lo = lo - f;
    r.hi = hi - f;
  } else {
    r.lo = lo - f - 1;
    r.hi = hi - f - 1;
  }
  // Both endpoints now share a sign (or one is zero, which fails below).
  const Rational abs_lo = abs(r.lo);
  const Rational abs_hi = abs(r.hi);
  const Rational& smallest = std::min(abs_lo, abs_hi);
  Rational scaled_width = r.width();
  mpq_mul_2exp(scaled_width.get_mpq_t(), scaled_width.get_mpq_t(), 51);
  if (smallest == 0 || scaled_width >= smallest) return std::nullopt;
  return r;
}

std::size_t quotient_limit(const AlphaSpec& spec) {
  const auto avail = spec.available_quotients();
  return avail ? *avail : std::numeric_limits<std::size_t>::max();
}

// Re-expands `cf` to a longer prefix if the AlphaSpec allows it.
std::optional<ContinuedFraction> extend(const ContinuedFraction& cf) {
  const std::size_t limit = quotient_limit(cf.alpha);
  const std::size_t current = cf.last_index();
  if (current + 1 >= limit) return std::nullopt;
  const std::size_t target = std::min<std::size_t>(2 * current + 8, limit - 1);
  return continued_fraction(cf.alpha, target);
}

}  // namespace

AlphaSpec AlphaSpec::surd(Integer P, Integer D, Integer Q) {
  if (D <= 0) fail(ErrorCode::kInvalidSurd, "surd radicand must be positive");
  if (is_perfect_square(D)) {
    fail(ErrorCode::kInvalidSurd, "surd radicand " + D.get_str() + " is a perfect square");
  }
  if (Q == 0) fail(ErrorCode::kInvalidSurd, "surd denominator must be nonzero");
  return AlphaSpec(Surd{std::move(P), std::move(D), std::move(Q)});
}

AlphaSpec AlphaSpec::partial_quotients(std::vector<Integer> head,
                                       std::vector<Integer> periodic_tail) {
  if (head.empty()) fail(ErrorCode::kInvalidArgument, "partial quotient head needs a_0");
  for (std::size_t i = 1; i < head.size(); ++i) {
    if (head[i] < 1) {
      fail(ErrorCode::kInvalidArgument, "partial quotient a_" + std::to_string(i) + " must be >= 1");
    }
  }
  for (const auto& t : periodic_tail) {
    if (t < 1) fail(ErrorCode::kInvalidArgument, "periodic partial quotients must be >= 1");
  }
  return AlphaSpec(PartialQuotients{std::move(head), std::move(periodic_tail)});
}

std::optional<std::size_t> AlphaSpec::available_quotients() const {
  if (is_surd()) return std::nullopt;
  const auto& pq = as_partial_quotients();
  if (!pq.periodic_tail.empty()) return std::nullopt;
  return pq.head.size();
}

std::string AlphaSpec::to_string() const {
  std::ostringstream os;
  if (is_surd()) {
    const auto& s = as_surd();
    os << "surd:" << s.P.get_str() << "," << s.D.get_str() << "," << s.Q.get_str();
    return os.str();
  }
  const auto& pq = as_partial_quotients();
  os << "cf:" << pq.head.front().get_str();
  if (pq.head.size() > 1 || !pq.periodic_tail.empty()) os << ";";
  for (std::size_t i = 1; i < pq.head.size(); ++i) {
    if (i > 1) os << ",";
    os << pq.head[i].get_str();
  }
  if (!pq.periodic_tail.empty()) {
    if (pq.head.size() > 1) os << ",";
    os << "(";
    for (std::size_t i = 0; i < pq.periodic_tail.size(); ++i) {
      if (i > 0) os << ",";
      os << pq.periodic_tail[i].get_str();
    }
    os << ")";
  }
  return os.str();
}

double RationalInterval::midpoint() const {
  const Rational mid = (lo + hi) / 2;
  return ratio_to_double(mid.get_num(), mid.get_den());
}

double approximate(const ExactValue& v) {
  if (const auto* s = std::get_if<QuadraticSurd>(&v)) return s->to_double();
  return std::get<RationalInterval>(v).midpoint();
}

int certified_sign(const ExactValue& v) {
  if (const auto* s = std::get_if<QuadraticSurd>(&v)) return s->sign();
  const auto& r = std::get<RationalInterval>(v);
  if (r.lo >= 0) return 1;
  if (r.hi <= 0) return -1;
  return 0;
}

bool certainly_less(const ExactValue& v, const Rational& x) {
  if (const auto* s = std::get_if<QuadraticSurd>(&v)) return s->compare(x) < 0;
  return std::get<RationalInterval>(v).hi <= x;
}

bool certainly_greater(const ExactValue& v, const Rational& x) {
  if (const auto* s = std::get_if<QuadraticSurd>(&v)) return s->compare(x) > 0;
  return std::get<RationalInterval>(v).lo >= x;
}

std::vector<Integer> partial_quotients(const AlphaSpec& spec, std::size_t n) {
  if (spec.is_surd()) return surd_quotients(spec.as_surd(), n);
  const auto& pq = spec.as_partial_quotients();
  if (pq.periodic_tail.empty() && n >= pq.head.size()) {
    fail(ErrorCode::kInsufficientQuotients,
         "requested a_" + std::to_string(n) + " but the head only has " +
             std::to_string(pq.head.size()) + " partial quotients");
  }
  std::vector<Integer> out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    if (i < pq.head.size()) {
      out.push_back(pq.head[i]);
    } else {
      out.push_back(pq.periodic_tail[(i - pq.head.size()) % pq.periodic_tail.size()]);
    }
  }
  return out;
}

std::vector<Convergent> convergents(std::span<const Integer> quotients) {
  std::vector<Convergent> out;
  out.reserve(quotients.size());
  Integer p2 = 0, p1 = 1;  // p_{k-2}, p_{k-1}
  Integer q2 = 1, q1 = 0;
  for (std::size_t k = 0; k < quotients.size(); ++k) {
    const Integer& a = quotients[k];
    if (k > 0 && a < 1) {
      fail(ErrorCode::kInvalidArgument, "partial quotient a_" + std::to_string(k) + " must be >= 1");
    }
    Integer p = a * p1 + p2;
    Integer q = a * q1 + q2;
    p2 = std::move(p1);
    q2 = std::move(q1);
    p1 = p;
    q1 = q;
    out.push_back({std::move(p), std::move(q)});
  }
  return out;
}

ContinuedFraction continued_fraction(const AlphaSpec& spec, std::size_t n) {
  ContinuedFraction cf{spec, partial_quotients(spec, n), {}};
  cf.convergents = convergents(cf.quotients);
  return cf;
}

Rational signed_frac_scalar(const Rational& x) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rational r = x - f;
  if (r > kHalf) r -= 1;
  return r;
}

QuadraticSurd signed_frac_scalar(const QuadraticSurd& x) {
  QuadraticSurd r = x - x.floor();
  if (r.compare(kHalf) > 0) r = r - Integer(1);
  return r;
}

double signed_frac_scalar(double x) {
  double r = x - std::floor(x);
  if (r > 0.5) r -= 1.0;
  return r;
}

RationalInterval alpha_enclosure(const ContinuedFraction& cf) {
  const std::size_t n = cf.last_index();
  const Rational last(cf.p(n), cf.q(n));
  const Integer& p_prev = n > 0 ? cf.p(n - 1) : Integer(1);
  const Integer& q_prev = n > 0 ? cf.q(n - 1) : Integer(0);
  // Any continuation has complete quotient alpha_{n+1} in (1, inf), which
  // places alpha strictly between p_n/q_n and the mediant.
  const Rational mediant(cf.p(n) + p_prev, cf.q(n) + q_prev);
  RationalInterval r;
  r.lo = std::min(last, mediant);
  r.hi = std::max(last, mediant);
  r.lo.canonicalize();
  r.hi.canonicalize();
  return r;
}

SignedFrac frac_exact(const ContinuedFraction& cf, const Integer& m) {
  if (m < 1) fail(ErrorCode::kInvalidArgument, "frac_exact requires m >= 1");
  if (cf.alpha.is_surd()) {
    const QuadraticSurd x = surd_value(cf.alpha.as_surd()) * m;
    QuadraticSurd r = signed_frac_scalar(x);
    const double approx = r.to_double();
    return SignedFrac{m, std::move(r), approx};
  }
  std::optional<ContinuedFraction> local;
  const ContinuedFraction* current = &cf;
  for (;;) {
    const RationalInterval enc = alpha_enclosure(*current);
    if (auto r = certify_signed_frac(enc.lo * m, enc.hi * m)) {
      const double approx = r->midpoint();
      return SignedFrac{m, std::move(*r), approx};
    }
    local = extend(*current);
    if (!local) {
      fail(ErrorCode::kInsufficientPrecision,
           "cannot resolve {{" + m.get_str() + "*alpha}} from " +
               std::to_string(current->size()) +
               " partial quotients; extend the head of the cf: spec");
    }
    current = &*local;
  }
}

OstrowskiExpansion ostrowski_expand(const Integer& m, const ContinuedFraction& cf) {
  if (m < 0) fail(ErrorCode::kInvalidArgument, "Ostrowski expansion needs m >= 0");
  const std::size_t n = cf.last_index();
  if (m >= cf.q(n)) {
    fail(ErrorCode::kRangeExceeded, "m = " + m.get_str() + " is not below the largest available q_" +
                                        std::to_string(n) + " = " + cf.q(n).get_str());
  }
  OstrowskiExpansion exp;
  exp.m = m;
  std::size_t top = 0;
  for (std::size_t k = n; k-- > 0;) {
    if (cf.q(k) <= m) {
      top = k;
      break;
    }
  }
  exp.top = top;
  exp.coeffs.assign(top + 1, Integer(0));
  Integer rest = m;
  for (std::size_t k = top + 1; k-- > 0;) {
    if (rest == 0) break;
    mpz_fdiv_qr(exp.coeffs[k].get_mpz_t(), rest.get_mpz_t(), rest.get_mpz_t(),
                cf.q(k).get_mpz_t());
  }
  return exp;
}

Integer ostrowski_eval(const OstrowskiExpansion& exp, const ContinuedFraction& cf) {
  if (exp.coeffs.size() > cf.size()) {
    fail(ErrorCode::kIndexOutOfRange, "expansion has more digits than available convergents");
  }
  Integer total = 0;
  for (std::size_t k = 0; k < exp.coeffs.size(); ++k) total += exp.coeffs[k] * cf.q(k);
  return total;
}

ConvergentError convergent_error(const ContinuedFraction& cf, std::size_t n) {
  if (n + 1 >= cf.size()) {
    fail(ErrorCode::kIndexOutOfRange, "convergent_error(" + std::to_string(n) +
                                          ") needs convergents through index " +
                                          std::to_string(n + 1));
  }
  const Rational approx(cf.p(n), cf.q(n));
  const Integer scale = cf.q(n) * cf.q(n + 1);
  if (cf.alpha.is_surd()) {
    QuadraticSurd psi = surd_value(cf.alpha.as_surd()) - approx;
    QuadraticSurd xi = psi * scale;
    return ConvergentError{n, std::move(psi), std::move(xi)};
  }
  // Use a few more quotients than strictly needed when the AlphaSpec has them.
  std::optional<ContinuedFraction> wider;
  const std::size_t limit = quotient_limit(cf.alpha);
  const std::size_t want = std::min<std::size_t>(n + 4, limit - 1);
  if (want > cf.last_index()) wider = continued_fraction(cf.alpha, want);
  const RationalInterval enc = alpha_enclosure(wider ? *wider : cf);
  RationalInterval psi{enc.lo - approx, enc.hi - approx};
  RationalInterval xi{psi.lo * scale, psi.hi * scale};
  return ConvergentError{n, std::move(psi), std::move(xi)};
}

double eps_alpha_estimate(const ContinuedFraction& cf, std::size_t n_max) {
  if (n_max > cf.last_index()) {
    fail(ErrorCode::kIndexOutOfRange, "eps_alpha_estimate beyond available convergents");
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n <= n_max; ++n) {
    const SignedFrac f = frac_exact(cf, cf.q(n));
    best = std::min(best, std::abs(f.approx) * cf.q(n).get_d());
  }
  return best;
}

}  // namespace ostrowski
