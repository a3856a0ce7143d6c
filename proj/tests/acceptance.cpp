// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance              all criteria
//   acceptance --criterion K  only criterion K

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mpfr_oracle.hpp"
#include "ostrowski/context.hpp"
#include "ostrowski/discrepancy.hpp"
#include "ostrowski/error.hpp"
#include "ostrowski/sums.hpp"
#include "ostrowski/verify.hpp"
#include "suite.hpp"

using namespace ostrowski;

namespace {

namespace tol {
constexpr double kRecipRelative = 1e-8;
constexpr double kNaiveClosedPerM = 1e-9;
constexpr double kIdentityRelative = 1e-8;
constexpr double kLemmaFactor = 16.0;
constexpr double kDiscrepancyCap = 3.0;
constexpr std::uint64_t kLemmaMaxQ = 1'000'000;
constexpr std::uint64_t kDiscrepancyMaxQ = 4096;
constexpr std::uint64_t kHardyLittlewoodM = 100'000;
}  // namespace tol

namespace limit {
constexpr double kLemmaSeconds = 120;
constexpr double kNaiveClosedSeconds = 60;
constexpr double kTheoremSeconds = 300;
constexpr double kHardyLittlewoodSeconds = 60;
}  // namespace limit

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double relative(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(std::abs(b), 1.0);
}

// Levels n >= 1 with q_n <= q_max and q_n fitting 64 bits.
std::vector<std::size_t> levels_up_to(const AlphaContext& c, std::uint64_t q_max) {
  std::vector<std::size_t> out;
  for (std::size_t n = 1; n + 1 < c.cf().size(); ++n) {
    if (!c.cf().q(n).fits_ulong_p() || c.q64(n) > q_max) break;
    out.push_back(n);
  }
  return out;
}

Outcome criterion_1() {
  Timer timer;
  Outcome o;
  std::size_t rows = 0;
  double worst_ratio = 0.0;
  double worst_rel = 0.0;
  for (const auto& [key, spec] : suite::bounded()) {
    const AlphaContext c(spec);
    const oracle::MpfrAlpha ref(spec, 256);
    for (const std::size_t n : levels_up_to(c, tol::kLemmaMaxQ)) {
      const KHReport r = kh_lemma_check(c, n);
      ++rows;
      const long double expect = ref.recip(r.q_n - 1);
      const double rel = std::abs(r.sum_value - static_cast<double>(expect)) /
                         std::max(1.0, std::abs(static_cast<double>(expect)));
      worst_rel = std::max(worst_rel, rel);
      worst_ratio = std::max(worst_ratio, r.ratio);
      if (!r.min_dist_certified || r.ratio > tol::kLemmaFactor || rel >= tol::kRecipRelative) {
        o.pass = false;
        o.detail += fmt(" [%s n=%zu ratio=%.4f rel=%.2e dist_ok=%d]", key.c_str(), n, r.ratio, rel,
                        int(r.min_dist_certified));
      }
    }
  }
  const double secs = timer.seconds();
  if (secs > limit::kLemmaSeconds) o.pass = false;
  o.detail = fmt("%zu levels, max |sum|/q_n = %.4f (cap 16), max oracle rel err %.2e, %.1f s", rows,
                 worst_ratio, worst_rel, secs) +
             o.detail;
  return o;
}

Outcome criterion_2() {
  Timer timer;
  Outcome o;
  const Rational cap(static_cast<long>(tol::kDiscrepancyCap));
  std::size_t exact_rows = 0;
  double worst_D = 0.0;
  std::size_t random_rows = 0;
  double worst_harman_gap = 1e300;
  std::mt19937_64 rng(20261019);
  for (const auto& [key, spec] : suite::all()) {
    const AlphaContext c(spec);
    for (const std::size_t n : levels_up_to(c, tol::kDiscrepancyMaxQ)) {
      const DiscrepancyReport r = discrepancy_exact(c, c.q64(n));
      ++exact_rows;
      worst_D = std::max(worst_D, r.D_upper.get_d());
      if (r.D_upper > cap) {
        o.pass = false;
        o.detail += fmt(" [%s q_%zu D=%.6f]", key.c_str(), n, r.D_exact);
      }
    }
    // N < q_10, further limited by the O(N^2) budget.
    const std::uint64_t q10 = c.cf().q(10).fits_ulong_p() ? c.q64(10) : UINT64_MAX;
    const std::uint64_t n_max = std::min<std::uint64_t>(q10 - 1, 8192);
    for (int t = 0; t < 200; ++t) {
      const std::uint64_t N = 1 + rng() % n_max;
      const DiscrepancyReport d = discrepancy_exact(c, N);
      const DiscrepancyReport h = harman_bound(c.cf(), N);
      Integer total = 0;
      for (const auto& x : h.t_coeffs) total += x;
      const Rational bound(3 * total);
      ++random_rows;
      worst_harman_gap = std::min(worst_harman_gap, Rational(bound - d.D_upper).get_d());
      if (d.D_upper > bound) {
        o.pass = false;
        o.detail += fmt(" [%s N=%llu D=%.6f bound=%.1f]", key.c_str(),
                        static_cast<unsigned long long>(N), d.D_exact, h.harman_bound);
      }
    }
  }
  o.detail = fmt("%zu exact D_{q_n}, max %.6f (cap 3); %zu random N, min slack %.4f, %.1f s",
                 exact_rows, worst_D, random_rows, worst_harman_gap, timer.seconds()) +
             o.detail;
  return o;
}

Outcome criterion_3() {
  Timer timer;
  Outcome o;
  std::mt19937_64 rng(3);
  const auto specs = suite::all();
  std::size_t cases = 0;
  double worst = 0.0;
  for (std::size_t s = 0; s < 5; ++s) {
    const AlphaContext c(specs[s].spec);
    std::vector<std::uint64_t> ms;
    for (std::uint64_t M = 1; M <= 256; ++M) ms.push_back(M);
    for (int t = 0; t < 40; ++t) ms.push_back(257 + rng() % (2048 - 256));
    ms.push_back(2048);
    for (const std::uint64_t M : ms) {
      const double diff = std::abs(t_sum_naive(c, M) - t_sum_closed(c, M).T);
      const double scaled = diff / static_cast<double>(M);
      worst = std::max(worst, scaled);
      ++cases;
      if (scaled >= tol::kNaiveClosedPerM) {
        o.pass = false;
        o.detail += fmt(" [%s M=%llu diff=%.2e]", specs[s].key.c_str(),
                        static_cast<unsigned long long>(M), diff);
      }
    }
  }
  const double secs = timer.seconds();
  if (secs > limit::kNaiveClosedSeconds) o.pass = false;
  o.detail = fmt("%zu cases, max |naive - closed|/M = %.2e (tol 1e-9), %.1f s", cases, worst, secs) +
             o.detail;
  return o;
}

Outcome criterion_4() {
  Timer timer;
  Outcome o;
  double worst_split = 0, worst_cot = 0, worst_tele = 0, worst_ck = 0, worst_closed = 0;
  auto note = [&](bool ok, const std::string& what) {
    if (!ok) {
      o.pass = false;
      o.detail += " [" + what + "]";
    }
  };
  const std::vector<std::uint64_t> grid{1, 2, 3, 5, 8, 13, 64, 100, 257, 1000, 4096};
  for (const auto& [key, spec] : suite::all()) {
    const AlphaContext c(spec);
    std::vector<std::uint64_t> ms = grid;
    for (const std::size_t n : levels_up_to(c, 4096)) ms.push_back(c.q64(n));
    for (const std::uint64_t M : ms) {
      const SumReport r = t_sum_closed(c, M);
      const double split = relative(1.0 + r.S1 - r.S2, r.T);
      const double cot = relative(s2_via_cot(c, M), r.S2);
      const double tele = M >= 2 ? telescope_check(c, M).residual : 0.0;
      worst_split = std::max(worst_split, split);
      worst_cot = std::max(worst_cot, cot);
      worst_tele = std::max(worst_tele, tele);
      const std::string where = key + " M=" + std::to_string(M);
      note(split < tol::kIdentityRelative, "split " + where);
      note(cot < tol::kIdentityRelative, "cot " + where);
      note(tele < tol::kIdentityRelative, "telescope " + where);
    }
    for (std::size_t i = 1; i + 2 < c.cf().size(); ++i) {
      if (!c.cf().q(i + 1).fits_ulong_p() || c.q64(i + 1) > 1'000'000) break;
      const std::uint64_t q = c.q64(i);
      if (q < 2) continue;
      const CkCheckReport ck = ck_check(c, i);
      worst_ck = std::max(worst_ck, ck.max_reconstruction_error);
      worst_closed = std::max(worst_closed, ck.max_closed_form_error);
      note(ck.pass && ck.max_reconstruction_error < tol::kIdentityRelative &&
               ck.max_closed_form_error < tol::kIdentityRelative,
           "C_k " + key + " i=" + std::to_string(i));
    }
  }
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.0, 0.5);
  std::vector<double> ts{0.5, 1e-300, 1e-8, 0.25, std::nextafter(0.5, 0.0)};
  while (ts.size() < 10'000) {
    const double t = unit(rng);
    if (t > 0) ts.push_back(t);
  }
  std::size_t bad_cot = 0;
  for (const double t : ts) {
    const double v = cot_remainder(t);
    bad_cot += !(v > -1.0 && v <= 0.0);
  }
  note(bad_cot == 0, std::to_string(bad_cot) + " cot_remainder samples out of (-1, 0]");
  o.detail = fmt("max rel: split %.1e, cot %.1e, telescope %.1e, C_k %.1e, closed forms %.1e; "
                 "cot_remainder %zu samples; %.1f s",
                 worst_split, worst_cot, worst_tele, worst_ck, worst_closed, ts.size(),
                 timer.seconds()) +
             o.detail;
  return o;
}

Outcome criterion_5() {
  Timer timer;
  Outcome o;
  std::uint64_t round_trips = 0;
  std::uint64_t segments = 0;
  auto bad = [&](const std::string& what) {
    o.pass = false;
    if (o.detail.size() < 400) o.detail += " [" + what + "]";
  };
  for (const auto& key : {"phi", "sqrt2"}) {
    const AlphaContext c(suite::by_key(key));
    const ContinuedFraction& cf = c.cf();
    const std::uint64_t q12 = c.q64(12);
    for (std::uint64_t m = 1; m < q12; ++m) {
      const Integer mi(static_cast<unsigned long>(m));
      const OstrowskiExpansion e = ostrowski_expand(mi, cf);
      ++round_trips;
      if (ostrowski_eval(e, cf) != mi) bad(std::string(key) + " round trip m=" + std::to_string(m));
      const SegmentPlan plan = segment_plan(m, cf);
      std::uint64_t next = 0;
      for (const Segment& g : plan.segments) {
        ++segments;
        if (g.start != next || g.length != c.q64(g.level)) bad(std::string(key) + " gap m=" + std::to_string(m));
        next = g.end();
        if (g.end() / g.length - g.start / g.length != 1) {
          bad(std::string(key) + " multiples m=" + std::to_string(m));
        }
      }
      if (next != m) bad(std::string(key) + " cover m=" + std::to_string(m));
    }
  }
  std::uint64_t shifts = 0;
  for (const auto& [key, spec] : suite::all()) {
    const AlphaContext c(spec);
    const ContinuedFraction& cf = c.cf();
    for (std::size_t i = 1; i <= 12 && i + 1 < cf.size(); ++i) {
      if (!cf.q(i).fits_ulong_p()) break;
      const std::uint64_t q = c.q64(i);
      if (q < 2) continue;
      const SegmentAnalysis base = exceptional_indices(Segment{i, 0, 0, q}, cf);
      const std::uint64_t reps = cf.a(i + 1).get_ui();
      for (std::uint64_t cc = 0; cc < reps; ++cc) {
        const SegmentAnalysis a = exceptional_indices(Segment{i, cc, cc * q, q}, cf);
        ++shifts;
        if (a.k_plus != base.k_plus + cc * q || a.k_minus != base.k_minus + cc * q ||
            a.k_zero != (cc + 1) * q) {
          bad(key + " shift i=" + std::to_string(i) + " c=" + std::to_string(cc));
        }
      }
    }
  }
  o.detail = fmt("%llu round trips, %llu segments, %llu shifted segments, %.1f s",
                 static_cast<unsigned long long>(round_trips), static_cast<unsigned long long>(segments),
                 static_cast<unsigned long long>(shifts), timer.seconds()) +
             o.detail;
  return o;
}

Outcome criterion_6() {
  Timer timer;
  Outcome o;
  std::size_t xi_rows = 0;
  std::size_t outer_rows = 0;
  double worst_outer = 0.0;
  const Rational half(1, 2);
  const Rational one(1);
  for (const auto& [key, spec] : suite::all()) {
    const AlphaContext c(spec, 64);
    for (std::size_t n = 0; n <= 40 && n + 1 < c.cf().size(); ++n) {
      const ExactValue xi = convergent_error(c.cf(), n).xi;
      const int want = n % 2 == 0 ? 1 : -1;
      const bool ok = certified_sign(xi) == want &&
                      (want > 0 ? certainly_greater(xi, half) && certainly_less(xi, one)
                                : certainly_less(xi, -half) && certainly_greater(xi, -one));
      ++xi_rows;
      if (!ok) {
        o.pass = false;
        o.detail += fmt(" [xi %s n=%zu]", key.c_str(), n);
      }
    }
    for (std::size_t n = 0; n <= 30 && n + 1 < c.cf().size(); ++n) {
      const OuterTermReport r = outer_term_check(c, n);
      ++outer_rows;
      worst_outer = std::max(worst_outer, r.chord / r.outer_bound);
      if (!r.pass || !(r.chord < r.outer_bound)) {
        o.pass = false;
        o.detail += fmt(" [outer %s n=%zu]", key.c_str(), n);
      }
    }
  }
  o.detail = fmt("%zu xi rows exact; %zu outer rows, max |1-e(q psi)|/(2pi/q_{n+1}) = %.4f; %.1f s",
                 xi_rows, outer_rows, worst_outer, timer.seconds()) +
             o.detail;
  return o;
}

Outcome criterion_7() {
  Timer timer;
  Outcome o;
  struct Target {
    const char* key;
    std::size_t n_max;
  };
  const Target targets[] = {{"phi", 30}, {"sqrt2", 30}, {"stress_i", 20}, {"stress_big", 20}};
  std::size_t evaluated = 0;
  std::size_t unevaluable = 0;
  double worst = 0.0;
  std::string skipped;
  for (const auto& t : targets) {
    const AlphaContext c(suite::by_key(t.key));
    std::optional<std::size_t> first_skip;
    for (std::size_t n = 0; n <= t.n_max; ++n) {
      try {
        const BoundReport r = theorem_bound_check(c, n, n);
        ++evaluated;
        worst = std::max(worst, r.max_ratio);
        if (!r.pass) {
          o.pass = false;
          o.detail += fmt(" [%s n=%zu ratio=%.3f]", t.key, n, r.max_ratio);
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kBudgetExceeded && e.code() != ErrorCode::kRangeExceeded) throw;
        if (!first_skip) first_skip = n;
        ++unevaluable;
        o.pass = false;
      }
    }
    if (first_skip) skipped += fmt(" %s:n>=%zu", t.key, *first_skip);
  }
  const double secs = timer.seconds();
  if (secs > limit::kTheoremSeconds) o.pass = false;
  o.detail = fmt("%zu rows, max rho = %.4f (cap 20); %zu rows beyond the term budget%s; %.1f s",
                 evaluated, worst, unevaluable, skipped.c_str(), secs) +
             o.detail;
  return o;
}

Outcome criterion_8() {
  Timer timer;
  const AlphaContext c(AlphaSpec::golden_ratio());
  const HardyLittlewoodReport r = hardy_littlewood_scan(c, tol::kHardyLittlewoodM);
  const double secs = timer.seconds();
  Outcome o;
  o.pass = r.pass && secs <= limit::kHardyLittlewoodSeconds;
  o.detail = fmt("max |S''_M| = %.5f at M = %llu (cap %.1f), %.1f s", r.max_abs,
                 static_cast<unsigned long long>(r.argmax), r.cap, secs);
  return o;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"KH chain: |sum 1/{{m alpha}}| <= 16 q_n, min ||m alpha|| > 1/(2 q_n)", criterion_1},
      {"discrepancy: D_{q_n} <= 3, Harman dominance", criterion_2},
      {"naive vs closed T_M", criterion_3},
      {"identity suite", criterion_4},
      {"Ostrowski and segment structure", criterion_5},
      {"xi_n range and sign, outer term", criterion_6},
      {"|T_{q_n}| / B_n <= 20", criterion_7},
      {"Hardy-Littlewood scan, golden ratio", criterion_8},
  };
  std::size_t only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::stoul(argv[++i]);
  }
  if (only > criteria.size()) {
    std::fprintf(stderr, "no criterion %zu\n", only);
    return 2;
  }
  bool all_pass = true;
  for (std::size_t k = 1; k <= criteria.size(); ++k) {
    if (only != 0 && k != only) continue;
    Outcome o;
    try {
      o = criteria[k - 1].run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    all_pass = all_pass && o.pass;
    std::printf("%s criterion %zu: %s: %s\n", o.pass ? "PASS" : "FAIL", k, criteria[k - 1].title,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
