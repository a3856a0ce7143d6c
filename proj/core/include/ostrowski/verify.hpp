#pragma once

// Empirical checks of the bounds on T_{q_n}, S''_M and the reciprocal sums,
// with the fixed caps those checks are judged against.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ostrowski/context.hpp"
#include "ostrowski/sums.hpp"

namespace ostrowski {

/// Caps for statements whose constants are only known to exist. Each value
/// was fixed once from an oracle run (see the comments in verify.cpp) and is
/// versioned with the suite so that regressions show up as failures.
namespace caps {
inline constexpr double kTheoremRatio = 20.0;        // max_n |T_{q_n}| / B_n
inline constexpr double kSinaiUlcigrai = 2.0;        // max_n |T_{q_n}|, bounded a_i
inline constexpr double kHardyLittlewoodPhi = 1.0;   // max_{M<=1e5} |S''_M|, golden ratio
inline constexpr double kLemmaOst = 2.0;             // |sum_{k<=m} 1/{{k alpha}}| / (q_n log-factor)
}  // namespace caps

struct BoundRow {
  std::size_t n = 0;
  Integer a_n;
  Integer q_n;
  std::complex<double> T;
  double abs_T = 0.0;
  double bound = 0.0;  // B_n, or 1 for the plain boundedness check
  double ratio = 0.0;  // abs_T / bound
  bool pass = false;   // ratio <= cap
};

struct BoundReport {
  std::string alpha_id;
  std::vector<BoundRow> rows;
  double max_ratio = 0.0;
  double cap = 0.0;
  bool pass = false;
};

/// B_n = max{ln(2·max_{1<=i<=n} a_i) / a_{n+1}, 1}. Needs a_{n+1}.
double theorem_bound(const ContinuedFraction& cf, std::size_t n);

/// Rows for n = n_first..n_last with ratio |T_{q_n}| / B_n.
BoundReport theorem_bound_check(const AlphaContext& alpha, std::size_t n_first,
                                std::size_t n_last, double cap = caps::kTheoremRatio,
                                const Budget& budget = {});

/// Rows with bound 1, so the ratio is |T_{q_n}| itself.
BoundReport sinai_ulcigrai_check(const AlphaContext& alpha, std::size_t n_first,
                                 std::size_t n_last, double cap = caps::kSinaiUlcigrai,
                                 const Budget& budget = {});

struct HardyLittlewoodReport {
  std::uint64_t M_max = 0;
  double max_abs = 0.0;  // max_{1<=M<=M_max} |S''_M|
  std::uint64_t argmax = 1;
  double cap = 0.0;
  bool pass = false;
};

/// One pass over m = 1..M_max-1, reading S''_M off the running sum.
HardyLittlewoodReport hardy_littlewood_scan(const AlphaContext& alpha, std::uint64_t M_max,
                                            double cap = caps::kHardyLittlewoodPhi,
                                            const Budget& budget = {});

struct LemmaOstReport {
  std::size_t n = 0;
  std::uint64_t q_n = 0;
  double log_factor = 1.0;  // max_{1<=i<=n} max(1, ln a_i)
  std::uint64_t samples = 0;
  double max_ratio = 0.0;
  std::uint64_t argmax = 0;
  double endpoint_ratio = 0.0;  // |sum_{k<q_n} 1/{{k alpha}}| / q_n
  double cap = 0.0;
  bool pass = false;  // max_ratio <= cap and endpoint_ratio <= 16
};

/// Checks every m in `sample_ms` (all m < q_n when empty).
LemmaOstReport lemma_ost_check(const AlphaContext& alpha, std::size_t n,
                               std::vector<std::uint64_t> sample_ms = {},
                               double cap = caps::kLemmaOst, const Budget& budget = {});

struct TelescopeReport {
  std::uint64_t M = 0;
  std::complex<double> lhs;  // sum_{m<M} e(Mm alpha)/(e(m alpha)-1)
  std::complex<double> rhs;  // Abel-summed form
  double residual = 0.0;     // |lhs - rhs| / max(|lhs|, 1)
  bool pass = false;         // residual < 1e-8
};

TelescopeReport telescope_check(const AlphaContext& alpha, std::uint64_t M,
                                const Budget& budget = {});

struct OuterTermReport {
  std::size_t n = 0;
  double theta = 0.0;        // q_n psi_n
  double chord = 0.0;        // |1 - e(theta)|
  double arc = 0.0;          // 2 pi |theta|
  double outer_bound = 0.0;  // 2 pi / q_{n+1}
  bool theta_matches_psi = false;  // q_n psi_n == {{q_n alpha}} mod 1, exactly
  bool chord_le_arc = false;
  bool arc_lt_outer = false;       // exact: |theta| < 1/q_{n+1}
  bool pass = false;
};

OuterTermReport outer_term_check(const AlphaContext& alpha, std::size_t n);

struct GrowthProbe {
  std::size_t level = 0;
  std::uint64_t C = 0;
  std::vector<double> terms;  // 1/{{(c+1) q_i alpha}}, c = 0..C-1
  double value = 0.0;
  double scale = 0.0;  // q_{i+1} ln(C + 1)
  double ratio = 0.0;
  int xi_sign = 0;
};

/// Diagnostic only; nothing is asserted.
GrowthProbe growth_probe(const AlphaContext& alpha, std::size_t level, std::uint64_t C);

struct CkCheckReport {
  std::size_t level = 0;
  std::size_t segments = 0;
  std::size_t coefficients = 0;
  double max_abs_C = 0.0;
  double max_reconstruction_error = 0.0;  // relative, against 1/{{k alpha}}
  double max_closed_form_error = 0.0;     // relative; 0 when q_i < 4
  bool shift_law_holds = false;
  bool pass = false;
};

/// Runs the segment analysis for the segments (c·q_i, (c+1)·q_i] with
/// c = 0..a_{i+1}-1 at the given level.
CkCheckReport ck_check(const AlphaContext& alpha, std::size_t level, const Budget& budget = {});

}  // namespace ostrowski
