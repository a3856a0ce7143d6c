#include "ostrowski/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ostrowski/compensated.hpp"
#include "ostrowski/error.hpp"

// Oracle runs behind the caps in verify.hpp. Release build; T_{q_n} from
// t_sum_closed, cross-checked against t_sum_naive for q_n <= 2048 (agreement
// below 1e-13).
//   kTheoremRatio        max rho_n: phi 1.4244 (n <= 30), sqrt2 1.3132 (n <= 24),
//                        a_i = i 1.1546 (n <= 11), 10^6 head 1.3229 (n <= 14).
//   kSinaiUlcigrai       max |T_{q_n}| over phi, sqrt2, sqrt3, [0;(1,2)] for
//                        n <= 18: 1.4762 (sqrt3).
//   kHardyLittlewoodPhi  max_{M <= 1e5} |S''_M| = 0.54906 at M = 75026.
//                        sqrt2 0.6147, sqrt3 0.6847.
//   kLemmaOst            max ratio: phi 0.9724 (n = 15), sqrt2 1.0980
//                        (n = 5, n <= 20), [0;(1,10)] 0.9807 (n <= 17).

namespace ostrowski {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

cplx unit(double x) {
  const double a = 2.0 * kPi * x;
  return {std::cos(a), std::sin(a)};
}

cplx reciprocal_unit_minus_one(double x) {
  const double s = std::sin(kPi * x);
  const double c = std::cos(kPi * x);
  const cplx z(-2.0 * s * s, 2.0 * s * c);
  return std::conj(z) / std::norm(z);
}

double certified_next(FracStream& s) {
  const FixedFrac f = s.next_raw();
  certify_relative(f);
  return f.value();
}

BoundReport bound_scan(const AlphaContext& alpha, std::size_t n_first, std::size_t n_last,
                       double cap, const Budget& budget, bool use_theorem_bound) {
  const ContinuedFraction& cf = alpha.cf();
  if (n_first > n_last) fail(ErrorCode::kInvalidArgument, "empty n range");
  if (n_last + 1 >= cf.size()) {
    fail(ErrorCode::kIndexOutOfRange, "bound check needs a_{n+1}; only " +
                                          std::to_string(cf.size()) + " quotients available");
  }
  // Check the whole range against the budget before doing any work.
  for (std::size_t n = n_first; n <= n_last; ++n) {
    budget.require(alpha.q64(n), "T_{q_" + std::to_string(n) + "}");
  }
  BoundReport report;
  report.alpha_id = alpha.spec().to_string();
  report.cap = cap;
  for (std::size_t n = n_first; n <= n_last; ++n) {
    BoundRow row;
    row.n = n;
    row.a_n = cf.a(n);
    row.q_n = cf.q(n);
    row.T = t_sum_closed(alpha, alpha.q64(n), budget).T;
    row.abs_T = std::abs(row.T);
    row.bound = use_theorem_bound ? theorem_bound(cf, n) : 1.0;
    row.ratio = row.abs_T / row.bound;
    row.pass = row.ratio <= cap;
    report.max_ratio = std::max(report.max_ratio, row.ratio);
    report.rows.push_back(std::move(row));
  }
  report.pass = report.max_ratio <= cap;
  return report;
}

}  // namespace

double theorem_bound(const ContinuedFraction& cf, std::size_t n) {
  if (n + 1 >= cf.size()) fail(ErrorCode::kIndexOutOfRange, "B_n needs a_{n+1}");
  // a_0 is excluded: T_M only sees alpha mod 1. An empty max (n = 0) is 1.
  Integer largest = 1;
  for (std::size_t i = 1; i <= n; ++i) largest = std::max(largest, cf.a(i));
  const double log_term = std::log(2.0 * largest.get_d()) / cf.a(n + 1).get_d();
  return std::max(log_term, 1.0);
}

BoundReport theorem_bound_check(const AlphaContext& alpha, std::size_t n_first,
                                std::size_t n_last, double cap, const Budget& budget) {
  return bound_scan(alpha, n_first, n_last, cap, budget, true);
}

BoundReport sinai_ulcigrai_check(const AlphaContext& alpha, std::size_t n_first,
                                 std::size_t n_last, double cap, const Budget& budget) {
  return bound_scan(alpha, n_first, n_last, cap, budget, false);
}

HardyLittlewoodReport hardy_littlewood_scan(const AlphaContext& alpha, std::uint64_t M_max,
                                            double cap, const Budget& budget) {
  if (M_max < 1) fail(ErrorCode::kInvalidArgument, "hardy_littlewood_scan needs M_max >= 1");
  budget.require(M_max, "hardy_littlewood_scan");
  HardyLittlewoodReport r;
  r.M_max = M_max;
  r.cap = cap;
  // S''_1 = 0; S''_M = (1/M) sum_{m=1}^{M-1} h_m.
  CompensatedComplexSum running;
  FracStream xs(alpha.fixed(), 1);
  for (std::uint64_t M = 2; M <= M_max; ++M) {
    running += reciprocal_unit_minus_one(certified_next(xs));
    const double v = std::abs(running.value()) / static_cast<double>(M);
    if (v > r.max_abs) {
      r.max_abs = v;
      r.argmax = M;
    }
  }
  r.pass = r.max_abs <= cap;
  return r;
}

LemmaOstReport lemma_ost_check(const AlphaContext& alpha, std::size_t n,
                               std::vector<std::uint64_t> sample_ms, double cap,
                               const Budget& budget) {
  const ContinuedFraction& cf = alpha.cf();
  LemmaOstReport r;
  r.n = n;
  r.q_n = alpha.q64(n);
  r.cap = cap;
  budget.require(r.q_n, "lemma_ost_check");
  for (std::size_t i = 1; i <= n; ++i) {
    r.log_factor = std::max(r.log_factor, std::log(cf.a(i).get_d()));
  }
  std::sort(sample_ms.begin(), sample_ms.end());
  for (const auto m : sample_ms) {
    if (m < 1 || m >= r.q_n) fail(ErrorCode::kInvalidArgument, "sampled m must lie in [1, q_n)");
  }
  const bool exhaustive = sample_ms.empty();
  const double scale = static_cast<double>(r.q_n) * r.log_factor;
  CompensatedSum acc;
  FracStream xs(alpha.fixed(), 1);
  std::size_t next_sample = 0;
  for (std::uint64_t m = 1; m < r.q_n; ++m) {
    acc += 1.0 / certified_next(xs);
    const bool sampled = exhaustive || (next_sample < sample_ms.size() && sample_ms[next_sample] == m);
    while (next_sample < sample_ms.size() && sample_ms[next_sample] <= m) ++next_sample;
    if (!sampled) continue;
    ++r.samples;
    const double ratio = std::abs(acc.value()) / scale;
    if (ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.argmax = m;
    }
  }
  r.endpoint_ratio = std::abs(acc.value()) / static_cast<double>(r.q_n);
  r.pass = r.max_ratio <= cap && r.endpoint_ratio <= 16.0;
  return r;
}

TelescopeReport telescope_check(const AlphaContext& alpha, std::uint64_t M, const Budget& budget) {
  if (M < 2) fail(ErrorCode::kInvalidArgument, "telescope_check needs M >= 2");
  budget.require(M, "telescope_check");
  TelescopeReport r;
  r.M = M;
  FracStream xs(alpha.fixed(), 1);
  FracStream es(alpha.fixed(), M);
  CompensatedComplexSum lhs;
  CompensatedComplexSum rhs;
  CompensatedComplexSum partial;  // H_m = sum_{k<=m} 1/(e(k alpha)-1)
  cplx e_current = unit(es.next_absolute());  // E_1 = e(M alpha)
  for (std::uint64_t m = 1; m < M; ++m) {
    const cplx h = reciprocal_unit_minus_one(certified_next(xs));
    partial += h;
    const cplx e_next = unit(es.next_absolute());  // E_{m+1}
    lhs += e_current * h;
    rhs += (e_current - e_next) * partial.value();
    e_current = e_next;
  }
  // e_current is now E_M = e(M^2 alpha).
  rhs += e_current * partial.value();
  r.lhs = lhs.value();
  r.rhs = rhs.value();
  r.residual = std::abs(r.lhs - r.rhs) / std::max(std::abs(r.lhs), 1.0);
  r.pass = r.residual < 1e-8;
  return r;
}

OuterTermReport outer_term_check(const AlphaContext& alpha, std::size_t n) {
  const ContinuedFraction& cf = alpha.cf();
  const ConvergentError err = convergent_error(cf, n);
  OuterTermReport r;
  r.n = n;
  const Integer& qn = cf.q(n);
  ExactValue theta;
  if (const auto* psi = std::get_if<QuadraticSurd>(&err.psi)) {
    theta = *psi * qn;
  } else {
    const auto& psi_i = std::get<RationalInterval>(err.psi);
    theta = RationalInterval{psi_i.lo * qn, psi_i.hi * qn};
  }
  r.theta = approximate(theta);

  // q_n psi_n and {{q_n alpha}} come from separate routines and must agree
  // mod 1; they differ by an integer only at n = 0.
  const SignedFrac frac = frac_exact(cf, qn);
  const Integer shift(static_cast<long>(std::llround(r.theta - frac.approx)));
  if (const auto* ts = std::get_if<QuadraticSurd>(&theta)) {
    r.theta_matches_psi = (*ts - shift) == std::get<QuadraticSurd>(frac.exact);
  } else {
    const auto& t = std::get<RationalInterval>(theta);
    const auto& f = std::get<RationalInterval>(frac.exact);
    r.theta_matches_psi = t.lo - shift < f.hi && f.lo < t.hi - shift;
  }

  r.chord = 2.0 * std::abs(std::sin(kPi * r.theta));
  r.arc = 2.0 * kPi * std::abs(r.theta);
  r.outer_bound = 2.0 * kPi / cf.q(n + 1).get_d();
  r.chord_le_arc = r.chord <= r.arc * (1.0 + 1e-12);
  const Rational limit(1, cf.q(n + 1));
  const int sign = certified_sign(theta);
  if (sign > 0) {
    r.arc_lt_outer = certainly_less(theta, limit);
  } else if (sign < 0) {
    r.arc_lt_outer = certainly_greater(theta, -limit);
  }
  r.pass = r.theta_matches_psi && r.chord_le_arc && r.arc_lt_outer;
  return r;
}

GrowthProbe growth_probe(const AlphaContext& alpha, std::size_t level, std::uint64_t C) {
  const ContinuedFraction& cf = alpha.cf();
  if (C < 1) fail(ErrorCode::kInvalidArgument, "growth_probe needs C >= 1");
  if (level + 1 >= cf.size()) fail(ErrorCode::kIndexOutOfRange, "growth_probe needs q_{i+1}");
  GrowthProbe g;
  g.level = level;
  g.C = C;
  FracStream stream(alpha.fixed(), alpha.q64(level));
  CompensatedSum acc;
  for (std::uint64_t c = 0; c < C; ++c) {
    const double term = 1.0 / certified_next(stream);
    g.terms.push_back(term);
    acc += term;
  }
  g.value = acc.value();
  g.scale = cf.q(level + 1).get_d() * std::log(static_cast<double>(C) + 1.0);
  g.ratio = g.value / g.scale;
  g.xi_sign = certified_sign(convergent_error(cf, level).xi);
  return g;
}

CkCheckReport ck_check(const AlphaContext& alpha, std::size_t level, const Budget& budget) {
  const ContinuedFraction& cf = alpha.cf();
  if (level + 1 >= cf.size()) fail(ErrorCode::kIndexOutOfRange, "ck_check needs q_{i+1}");
  const std::uint64_t q = alpha.q64(level);
  const std::uint64_t reps = alpha.cf().a(level + 1).get_ui();
  budget.require(static_cast<u128>(q) * reps, "ck_check");
  const double q_next = cf.q(level + 1).get_d();
  const double xi = approximate(convergent_error(cf, level).xi);

  CkCheckReport r;
  r.level = level;
  r.shift_law_holds = true;
  std::uint64_t k_plus0 = 0;
  std::uint64_t k_minus0 = 0;
  for (std::uint64_t c = 0; c < reps; ++c) {
    const Segment seg{level, c, c * q, q};
    const SegmentAnalysis a = ck_values(alpha, seg);
    ++r.segments;
    if (c == 0) {
      k_plus0 = a.k_plus;
      k_minus0 = a.k_minus;
    }
    if (a.k_plus != k_plus0 + c * q || a.k_minus != k_minus0 + c * q || a.k_zero != (c + 1) * q) {
      r.shift_law_holds = false;
    }
    // Direct reciprocals for the whole segment, then compare per k.
    std::vector<double> direct(q);
    FracStream xs(alpha.fixed(), 1, seg.start + 1);
    for (auto& v : direct) v = 1.0 / certified_next(xs);
    for (const CkValue& v : a.ck_values) {
      ++r.coefficients;
      r.max_abs_C = std::max(r.max_abs_C, std::abs(v.C));
      const double np = static_cast<double>(v.n_prime);
      const double k = static_cast<double>(v.k);
      const double rebuilt =
          static_cast<double>(q) / np + v.C * k * xi * static_cast<double>(q) / (np * np * q_next);
      const double d = direct[v.k - seg.start - 1];
      r.max_reconstruction_error = std::max(r.max_reconstruction_error, std::abs(rebuilt - d) / std::abs(d));
    }
    if (q >= 4) {
      const ExceptionalClosedForms f = exceptional_closed_forms(alpha, seg);
      r.max_closed_form_error = std::max(r.max_closed_form_error, f.max_relative_error);
    }
  }
  r.pass = r.shift_law_holds && r.max_abs_C < 2.0 && r.max_reconstruction_error < 1e-8 &&
           r.max_closed_form_error < 1e-8;
  return r;
}

}  // namespace ostrowski
