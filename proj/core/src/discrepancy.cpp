#include "ostrowski/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ostrowski/compensated.hpp"
#include "ostrowski/error.hpp"

namespace ostrowski {
namespace {

constexpr unsigned kBits = 192;

Rational units_to_rational(const Integer& units) {
  Rational r(units);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), kBits);
  return r;
}

Integer u128_to_integer(u128 v) {
  Integer hi(static_cast<unsigned long>(v >> 64));
  Integer lo(static_cast<unsigned long>(v));
  mpz_mul_2exp(hi.get_mpz_t(), hi.get_mpz_t(), 64);
  return hi + lo;
}

struct Point {
  U192 pos;       // lower bound of {m alpha} in units of 2^-192
  u128 err = 0;   // enclosure width
  std::uint64_t m = 0;
};

// Candidate value with certified bracket, in units of 2^-192.
struct Bracket {
  Integer lo;
  Integer hi;
};

Bracket arc_bracket(const std::vector<Point>& pts, std::size_t i, std::size_t d, bool closed) {
  const std::size_t n = pts.size();
  const std::size_t j = (i + d) % n;
  const Integer one = Integer(1) << kBits;
  Integer len = pts[j].pos.to_integer() - pts[i].pos.to_integer();
  if (i + d >= n) len += one;
  // True length lies in [len - err_i, len + err_j].
  const Integer len_lo = len - u128_to_integer(pts[i].err);
  const Integer len_hi = len + u128_to_integer(pts[j].err);
  const Integer N(static_cast<unsigned long>(n));
  const Integer count(static_cast<unsigned long>(closed ? d + 1 : d - 1));
  if (closed) return {count * one - N * len_hi, count * one - N * len_lo};
  return {N * len_lo - count * one, N * len_hi - count * one};
}

}  // namespace

ArcExtremum arc_discrepancy(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  if (n == 0) fail(ErrorCode::kInvalidArgument, "discrepancy of an empty point set");
  const double N = static_cast<double>(n);
  // Degenerate closed arc at a point, or the full circle minus one point.
  ArcExtremum best{1.0, 0, 0, true};
  for (std::size_t i = 0; i < n; ++i) {
    const double yi = sorted[i];
    for (std::size_t d = 1; d < n; ++d) {
      const std::size_t j = i + d;
      const double len = j < n ? sorted[j] - yi : sorted[j - n] + 1.0 - yi;
      const double closed = static_cast<double>(d + 1) - N * len;
      const double open = N * len - static_cast<double>(d - 1);
      if (closed > best.value) best = {closed, i, d, true};
      if (open > best.value) best = {open, i, d, false};
    }
  }
  return best;
}

DiscrepancyReport discrepancy_exact(const AlphaContext& alpha, std::uint64_t N, const Budget& budget) {
  if (N < 1) fail(ErrorCode::kInvalidArgument, "discrepancy needs N >= 1");
  budget.require(static_cast<u128>(N) * N, "discrepancy_exact");

  std::vector<Point> pts(N);
  FracStream stream(alpha.fixed(), 1);
  for (std::uint64_t m = 1; m <= N; ++m) {
    const FixedFrac f = stream.next_raw();
    pts[m - 1] = Point{f.raw, f.err, m};
  }
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.pos < b.pos; });

  // The sorted order is certified when consecutive enclosures are disjoint
  // and the last one does not wrap past 1.
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const U192 upper = pts[k].pos + U192{{static_cast<std::uint64_t>(pts[k].err),
                                          static_cast<std::uint64_t>(pts[k].err >> 64), 0}};
    const bool wraps = upper < pts[k].pos;
    const bool overlaps = k + 1 < pts.size() && !(upper < pts[k + 1].pos);
    if (wraps || overlaps) {
      fail(ErrorCode::kInsufficientPrecision, "cannot certify the order of {m*alpha}");
    }
  }

  std::vector<double> ys(pts.size());
  std::transform(pts.begin(), pts.end(), ys.begin(),
                 [](const Point& p) { return to_unit_double(p.pos); });
  const ArcExtremum top = arc_discrepancy(ys);

  // Re-evaluate every arc whose floating value is close to the maximum with
  // exact integer arithmetic on the enclosures.
  const double slack = 1e-7;
  const Integer one = Integer(1) << kBits;
  Integer best_lo = one;  // the constant-1 arcs
  Integer best_hi = one;
  const std::size_t n = pts.size();
  const double Nd = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 1; d < n; ++d) {
      const std::size_t j = i + d;
      const double len = j < n ? ys[j] - ys[i] : ys[j - n] + 1.0 - ys[i];
      const double closed = static_cast<double>(d + 1) - Nd * len;
      const double open = Nd * len - static_cast<double>(d - 1);
      for (const bool is_closed : {true, false}) {
        const double v = is_closed ? closed : open;
        if (v < top.value - slack) continue;
        const Bracket b = arc_bracket(pts, i, d, is_closed);
        if (b.lo > best_lo) best_lo = b.lo;
        if (b.hi > best_hi) best_hi = b.hi;
      }
    }
  }

  DiscrepancyReport report;
  report.N = N;
  report.D_lower = units_to_rational(best_lo);
  report.D_upper = units_to_rational(best_hi);
  const Integer mid = (best_lo + best_hi) / 2;
  report.D_exact = ratio_to_double(mid, one);
  return report;
}

DiscrepancyReport harman_bound(const ContinuedFraction& cf, std::uint64_t N) {
  if (N < 1) fail(ErrorCode::kInvalidArgument, "Harman bound needs N >= 1");
  const OstrowskiExpansion exp = ostrowski_expand(Integer(N), cf);
  DiscrepancyReport report;
  report.N = N;
  report.t_coeffs = exp.coeffs;
  Integer total = 0;
  for (const auto& t : exp.coeffs) total += t;
  report.harman_bound = 3.0 * total.get_d();
  return report;
}

KHReport kh_lemma_check(const AlphaContext& alpha, std::size_t n, const Budget& budget) {
  if (n < 1) fail(ErrorCode::kInvalidArgument, "kh_lemma_check requires n >= 1");
  KHReport r;
  r.n = n;
  r.q_n = alpha.q64(n);
  budget.require(r.q_n, "kh_lemma_check");
  const double qd = static_cast<double>(r.q_n);
  r.variation = 4.0 * qd;
  r.bound = 16.0 * qd;

  CompensatedSum acc;
  FracStream stream(alpha.fixed(), 1);
  U192 min_lower;
  bool have_min = false;
  for (std::uint64_t m = 1; m < r.q_n; ++m) {
    const FixedFrac f = stream.next_raw();
    certify_relative(f);
    acc += 1.0 / f.value();
    const U192 lower = f.abs_lower_bound();
    if (!have_min || lower < min_lower) {
      min_lower = lower;
      r.argmin = m;
      have_min = true;
    }
  }
  r.sum_value = acc.value();
  r.ratio = std::abs(r.sum_value) / qd;

  if (have_min) {
    // Every lower bound exceeds 1/(2 q_n) iff min_lower·2·q_n > 2^192.
    const Integer lhs = min_lower.to_integer() * 2 * Integer(static_cast<unsigned long>(r.q_n));
    r.min_dist_certified = lhs > (Integer(1) << kBits);
    r.min_dist = std::abs(frac_exact(alpha.cf(), Integer(static_cast<unsigned long>(r.argmin))).approx);
  } else {
    // q_n = 1: the range m <= q_n - 1 is empty.
    r.min_dist_certified = true;
    r.min_dist = 0.5;
  }
  r.passed = r.min_dist_certified && std::abs(r.sum_value) <= r.bound;
  return r;
}

}  // namespace ostrowski
