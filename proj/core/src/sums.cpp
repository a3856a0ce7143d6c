#include "ostrowski/sums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ostrowski/compensated.hpp"
#include "ostrowski/error.hpp"

namespace ostrowski {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

cplx unit(double x) {
  const double a = 2.0 * kPi * x;
  return {std::cos(a), std::sin(a)};
}

// e(x) - 1 without cancellation: -2 sin^2(pi x) + i sin(2 pi x).
cplx unit_minus_one(double x) {
  const double s = std::sin(kPi * x);
  const double c = std::cos(kPi * x);
  return {-2.0 * s * s, 2.0 * s * c};
}

// 1/(e(x) - 1) by explicit conjugate division; avoids the inf/nan
// handling of the library complex divide.
cplx reciprocal(cplx z) {
  const double n = z.real() * z.real() + z.imag() * z.imag();
  return {z.real() / n, -z.imag() / n};
}

// Certified {{x}} suitable for division: exact zero means alpha was rational.
double reciprocal_safe(FracStream& stream) {
  const FixedFrac f = stream.next_raw();
  if (f.raw == U192{}) {
    fail(ErrorCode::kDegenerateDenominator, "{{m*alpha}} is exactly zero; alpha is not irrational");
  }
  certify_relative(f);
  return f.value();
}

std::uint64_t to_u64(const Integer& v, const char* what) {
  if (v < 0 || !mpz_fits_ulong_p(v.get_mpz_t())) {
    fail(ErrorCode::kRangeExceeded, std::string(what) + " = " + v.get_str() + " exceeds 64 bits");
  }
  return v.get_ui();
}

std::uint64_t mod_u64(const Integer& v, std::uint64_t q) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), q);
  return r.get_ui();
}

// The unique index in (start, start + q] congruent to r mod q.
std::uint64_t shift_into(std::uint64_t r, std::uint64_t start, std::uint64_t q) {
  const std::uint64_t base = (start + 1) % q;
  const std::uint64_t offset = (r + q - base) % q;
  return start + 1 + offset;
}

}  // namespace

std::complex<double> t_sum_naive(const AlphaContext& alpha, std::uint64_t M, const Budget& budget) {
  if (M < 1) fail(ErrorCode::kInvalidArgument, "t_sum_naive requires M >= 1");
  budget.require(static_cast<u128>(M) * M, "t_sum_naive");
  CompensatedComplexSum total;
  total += cplx(static_cast<double>(M), 0.0);  // row m = 0
  for (std::uint64_t m = 1; m < M; ++m) {
    total += cplx(1.0, 0.0);  // column n = 0
    FracStream stream(alpha.fixed(), m);
    for (std::uint64_t n = 1; n < M; ++n) total += unit(stream.next_absolute());
  }
  return total.value() / static_cast<double>(M);
}

SumReport t_sum_closed(const AlphaContext& alpha, std::uint64_t M, const Budget& budget) {
  if (M < 1) fail(ErrorCode::kInvalidArgument, "t_sum_closed requires M >= 1");
  budget.require(M, "t_sum_closed");
  SumReport report;
  report.M = M;
  report.method = SumMethod::kClosed;
  CompensatedComplexSum t_acc;
  CompensatedComplexSum s1_acc;
  CompensatedComplexSum s2_acc;
  FracStream xs(alpha.fixed(), 1);
  FracStream ys(alpha.fixed(), M);
  for (std::uint64_t m = 1; m < M; ++m) {
    const double x = reciprocal_safe(xs);
    const double y = ys.next_absolute();
    const cplx inv = reciprocal(unit_minus_one(x));
    // e(y) and e(y) - 1 from one sine/cosine pair of pi*y.
    const double sy = std::sin(kPi * y);
    const double cy = std::cos(kPi * y);
    const cplx ey_minus_one{-2.0 * sy * sy, 2.0 * sy * cy};
    s2_acc += inv;
    s1_acc += (1.0 + ey_minus_one) * inv;
    t_acc += ey_minus_one * inv;
    report.max_term_magnitude = std::max(report.max_term_magnitude, std::abs(inv));
  }
  const double scale = 1.0 / static_cast<double>(M);
  report.T = 1.0 + t_acc.value() * scale;
  report.S1 = s1_acc.value() * scale;
  report.S2 = s2_acc.value() * scale;
  return report;
}

std::complex<double> s2_via_cot(const AlphaContext& alpha, std::uint64_t M, const Budget& budget) {
  if (M < 1) fail(ErrorCode::kInvalidArgument, "s2_via_cot requires M >= 1");
  budget.require(M, "s2_via_cot");
  CompensatedSum cot_sum;
  FracStream xs(alpha.fixed(), 1);
  for (std::uint64_t m = 1; m < M; ++m) {
    const double x = reciprocal_safe(xs);
    // cot(pi x) = cot(pi {{x}}); at x = 1/2 the cosine makes it 0.
    cot_sum += std::cos(kPi * x) / std::sin(kPi * x);
  }
  const double Md = static_cast<double>(M);
  return {-(Md - 1.0) / (2.0 * Md), -cot_sum.value() / (2.0 * Md)};
}

double cot_remainder(double t) {
  if (!(t > 0.0 && t <= 0.5)) {
    fail(ErrorCode::kDomainError, "cot_remainder is defined on (0, 1/2]");
  }
  const double u = kPi * t;
  if (u < 1e-3) {
    // u cot u - 1 = -u^2/3 - u^4/45 - 2u^6/945 - ...
    const double u2 = u * u;
    return -u2 * (1.0 / 3.0 + u2 * (1.0 / 45.0 + u2 * (2.0 / 945.0)));
  }
  return u * std::cos(u) / std::sin(u) - 1.0;
}

RecipSum recip_sum(const AlphaContext& alpha, std::uint64_t m, const Budget& budget) {
  if (m < 1) fail(ErrorCode::kInvalidArgument, "recip_sum requires m >= 1");
  budget.require(m, "recip_sum");
  RecipSum out;
  out.m = m;
  CompensatedSum acc;
  FracStream xs(alpha.fixed(), 1);
  for (std::uint64_t k = 1; k <= m; ++k) {
    const double term = 1.0 / reciprocal_safe(xs);
    acc += term;
    out.max_term = std::max(out.max_term, std::abs(term));
  }
  out.value = acc.value();
  return out;
}

SegmentPlan segment_plan(std::uint64_t m, const ContinuedFraction& cf) {
  const OstrowskiExpansion exp = ostrowski_expand(Integer(m), cf);
  SegmentPlan plan;
  plan.m = m;
  std::uint64_t start = 0;
  for (std::size_t i = 0; i < exp.coeffs.size(); ++i) {
    const std::uint64_t digit = to_u64(exp.coeffs[i], "Ostrowski digit");
    if (digit == 0) continue;
    const std::uint64_t q = to_u64(cf.q(i), "q_i");
    for (std::uint64_t c = 0; c < digit; ++c) {
      plan.segments.push_back(Segment{i, c, start, q});
      start += q;
    }
  }
  return plan;
}

double segment_sum(const AlphaContext& alpha, const Segment& segment) {
  CompensatedSum acc;
  FracStream xs(alpha.fixed(), 1, segment.start + 1);
  for (std::uint64_t l = 0; l < segment.length; ++l) acc += 1.0 / reciprocal_safe(xs);
  return acc.value();
}

SegmentAnalysis exceptional_indices(const Segment& segment, const ContinuedFraction& cf) {
  const std::size_t i = segment.level;
  if (i >= cf.size()) fail(ErrorCode::kIndexOutOfRange, "segment level beyond convergents");
  const std::uint64_t q = to_u64(cf.q(i), "q_i");
  if (q != segment.length) fail(ErrorCode::kInvalidArgument, "segment length must equal q_i");
  if (q < 2) {
    fail(ErrorCode::kDegenerateModulus, "q_" + std::to_string(i) + " = 1 has no nonzero residues");
  }
  Integer inv;
  mpz_invert(inv.get_mpz_t(), cf.p(i).get_mpz_t(), cf.q(i).get_mpz_t());
  const std::uint64_t inv_p = mod_u64(inv, q);

  SegmentAnalysis a;
  a.segment = segment;
  a.k_plus = shift_into(inv_p, segment.start, q);
  a.k_minus = shift_into((q - inv_p) % q, segment.start, q);
  a.k_zero = (segment.start / q + 1) * q;
  const auto residue_index = [&](std::uint64_t residue) {
    return shift_into(static_cast<std::uint64_t>((static_cast<u128>(residue) * inv_p) % q),
                      segment.start, q);
  };
  if (q % 2 == 0) {
    a.half_indices.push_back(residue_index(q / 2));
  } else {
    a.half_indices.push_back(residue_index((q - 1) / 2));
    a.half_indices.push_back(residue_index((q + 1) / 2));
  }
  a.degenerate = q <= 3;
  a.excluded = {a.k_plus, a.k_minus, a.k_zero};
  a.excluded.insert(a.excluded.end(), a.half_indices.begin(), a.half_indices.end());
  std::sort(a.excluded.begin(), a.excluded.end());
  a.excluded.erase(std::unique(a.excluded.begin(), a.excluded.end()), a.excluded.end());
  return a;
}

SegmentAnalysis ck_values(const AlphaContext& alpha, const Segment& segment) {
  const ContinuedFraction& cf = alpha.cf();
  SegmentAnalysis a = exceptional_indices(segment, cf);
  const std::size_t i = segment.level;
  const double xi = approximate(convergent_error(cf, i).xi);
  const std::uint64_t q = segment.length;
  const double q_next = cf.q(i + 1).get_d();
  const std::uint64_t p_mod = mod_u64(cf.p(i), q);
  for (std::uint64_t k = segment.start + 1; k <= segment.end(); ++k) {
    if (std::binary_search(a.excluded.begin(), a.excluded.end(), k)) continue;
    const auto n_k = static_cast<std::uint64_t>((static_cast<u128>(k) * p_mod) % q);
    const std::int64_t n_prime = 2 * n_k <= q ? static_cast<std::int64_t>(n_k)
                                              : static_cast<std::int64_t>(n_k) - static_cast<std::int64_t>(q);
    CkValue v;
    v.k = k;
    v.n_prime = n_prime;
    v.x = static_cast<double>(k) * xi / (static_cast<double>(n_prime) * q_next);
    v.C = -1.0 / (1.0 + v.x);
    a.ck_values.push_back(v);
  }
  return a;
}

ExceptionalClosedForms exceptional_closed_forms(const AlphaContext& alpha, const Segment& segment) {
  const ContinuedFraction& cf = alpha.cf();
  if (segment.length < 4) {
    fail(ErrorCode::kDegenerateModulus,
         "closed forms need q_i >= 4; smaller moduli merge the exceptional residues");
  }
  const SegmentAnalysis a = exceptional_indices(segment, cf);
  const std::size_t i = segment.level;
  const double xi = approximate(convergent_error(cf, i).xi);
  const double q = cf.q(i).get_d();
  const double q_next = cf.q(i + 1).get_d();

  ExceptionalClosedForms out;
  out.k_plus = a.k_plus;
  out.k_minus = a.k_minus;
  out.plus_closed = q * q_next / (q_next + static_cast<double>(a.k_plus) * xi);
  out.minus_closed = -q * q_next / (q_next - static_cast<double>(a.k_minus) * xi);
  out.plus_direct = 1.0 / frac_exact(cf, Integer(a.k_plus)).approx;
  out.minus_direct = 1.0 / frac_exact(cf, Integer(a.k_minus)).approx;
  const double e_plus = std::abs(out.plus_closed - out.plus_direct) / std::abs(out.plus_direct);
  const double e_minus = std::abs(out.minus_closed - out.minus_direct) / std::abs(out.minus_direct);
  out.max_relative_error = std::max(e_plus, e_minus);
  out.consistent = out.max_relative_error < 1e-9;
  return out;
}

}  // namespace ostrowski
