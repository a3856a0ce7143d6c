#pragma once

// The double exponential sum
//
//   T_M = (1/M) sum_{m=0}^{M-1} sum_{n=0}^{M-1} e(n·m·alpha),   e(x) = exp(2 pi i x),
//
// its split T_M = 1 + S'_M - S''_M with
//
//   S'_M  = (1/M) sum_{m=1}^{M-1} e(M·m·alpha) / (e(m·alpha) - 1),
//   S''_M = (1/M) sum_{m=1}^{M-1} 1 / (e(m·alpha) - 1),
//
// reciprocal sums of signed fractional parts, and their decomposition into
// Ostrowski segments (blocks of q_i consecutive indices) with the
// exceptional indices that dominate each block.
//
// Every trigonometric argument is a certified {{x}} from the fixed-point
// stream, never a raw floating m·alpha.

#include <complex>
#include <cstdint>
#include <vector>

#include "ostrowski/context.hpp"

namespace ostrowski {

enum class SumMethod { kNaive, kClosed };

struct SumReport {
  std::uint64_t M = 0;
  std::complex<double> T;
  std::complex<double> S1;  // S'_M
  std::complex<double> S2;  // S''_M
  SumMethod method = SumMethod::kClosed;
  double max_term_magnitude = 0.0;  // max |1/(e(m alpha) - 1)|
};

/// O(M^2) reference evaluation of T_M. Costs M^2 against the budget.
std::complex<double> t_sum_naive(const AlphaContext& alpha, std::uint64_t M,
                                 const Budget& budget = {});

/// O(M) evaluation through the geometric-series closed form. T is summed
/// on its own, not assembled from S1 and S2.
SumReport t_sum_closed(const AlphaContext& alpha, std::uint64_t M, const Budget& budget = {});

/// S''_M = -(M-1)/(2M) - (i/2M) sum cot(pi {{m alpha}}).
std::complex<double> s2_via_cot(const AlphaContext& alpha, std::uint64_t M,
                                const Budget& budget = {});

/// pi·t·cot(pi·t) - 1 on (0, 1/2]; lies in (-1, 0] and decreases in t.
double cot_remainder(double t);

struct RecipSum {
  std::uint64_t m = 0;
  double value = 0.0;     // sum_{k=1}^m 1/{{k alpha}}
  double max_term = 0.0;  // largest |1/{{k alpha}}|
};

RecipSum recip_sum(const AlphaContext& alpha, std::uint64_t m, const Budget& budget = {});

/// Indices (start, start + length] at Ostrowski level i, repetition c.
struct Segment {
  std::size_t level = 0;
  std::uint64_t c = 0;
  std::uint64_t start = 0;
  std::uint64_t length = 0;  // q_level

  std::uint64_t end() const { return start + length; }
  bool operator==(const Segment&) const = default;
};

struct SegmentPlan {
  std::uint64_t m = 0;
  std::vector<Segment> segments;  // consecutive, covering [1, m]
};

/// Segments from the Ostrowski digits of m, lowest level first.
SegmentPlan segment_plan(std::uint64_t m, const ContinuedFraction& cf);

/// sum over the segment of 1/{{l alpha}}.
double segment_sum(const AlphaContext& alpha, const Segment& segment);

struct CkValue {
  std::uint64_t k = 0;
  std::int64_t n_prime = 0;  // nearest-to-zero representative of k·p_i mod q_i
  double x = 0.0;            // k·xi_i / (n'_k · q_{i+1})
  double C = 0.0;            // -1/(1+x)
};

struct SegmentAnalysis {
  Segment segment;
  std::uint64_t k_plus = 0;   // k·p_i ≡ +1 (mod q_i)
  std::uint64_t k_minus = 0;  // k·p_i ≡ -1 (mod q_i)
  std::uint64_t k_zero = 0;   // the multiple of q_i in the segment
  std::vector<std::uint64_t> half_indices;
  /// q_i <= 3: the residues 0, ±1 and the half residues overlap, so the
  /// whole exceptional set is merged and `excluded` is all there is.
  bool degenerate = false;
  std::vector<std::uint64_t> excluded;  // sorted, deduplicated
  std::vector<CkValue> ck_values;
};

/// Exceptional indices of a segment. Throws DegenerateModulus for q_i < 2.
SegmentAnalysis exceptional_indices(const Segment& segment, const ContinuedFraction& cf);

/// Fills the C_k coefficients of every non-exceptional index. Needs q_{i+1}.
SegmentAnalysis ck_values(const AlphaContext& alpha, const Segment& segment);

struct ExceptionalClosedForms {
  std::uint64_t k_plus = 0;
  std::uint64_t k_minus = 0;
  double plus_closed = 0.0;   // q_i q_{i+1} / (q_{i+1} + k_plus·xi_i)
  double plus_direct = 0.0;   // 1/{{k_plus alpha}}
  double minus_closed = 0.0;  // -q_i q_{i+1} / (q_{i+1} - k_minus·xi_i)
  double minus_direct = 0.0;
  double max_relative_error = 0.0;
  bool consistent = false;    // both agree to 1e-9 relative
};

/// Throws DegenerateModulus for q_i < 4.
ExceptionalClosedForms exceptional_closed_forms(const AlphaContext& alpha, const Segment& segment);

}  // namespace ostrowski
