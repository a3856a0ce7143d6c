#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ostrowski/context.hpp"

namespace ostrowski {

/// Unnormalized discrepancy of {m alpha}, m = 1..N, over circular arcs, and
/// the greedy bound D_N <= 3·sum t_j with N = sum t_j q_j.
struct DiscrepancyReport {
  std::uint64_t N = 0;
  double D_exact = 0.0;
  /// Certified bracket D_lower <= D <= D_upper (width ~2^-150).
  Rational D_lower;
  Rational D_upper;
  double harman_bound = 0.0;
  std::vector<Integer> t_coeffs;  // t_0..t_r
};

struct ArcExtremum {
  double value = 0.0;
  std::size_t from = 0;  // sorted index of the first endpoint
  std::size_t span = 0;  // number of forward steps to the second endpoint
  bool closed = true;    // closed arc (count - N|I|) or open arc (N|I| - count)
};

/// Brute-force sup over arcs with endpoints at the points, all four
/// open/closed endpoint combinations. `sorted` must be ascending in [0, 1).
ArcExtremum arc_discrepancy(std::span<const double> sorted);

/// Exact D_N for the alpha sequence. Costs N^2 against the budget.
DiscrepancyReport discrepancy_exact(const AlphaContext& alpha, std::uint64_t N,
                                    const Budget& budget = {});

/// Fills t_coeffs and harman_bound. Throws RangeExceeded when N is not below
/// the largest available q.
DiscrepancyReport harman_bound(const ContinuedFraction& cf, std::uint64_t N);

struct KHReport {
  std::size_t n = 0;
  std::uint64_t q_n = 0;
  double min_dist = 0.0;         // min_{1<=m<=q_n-1} ||m alpha||
  std::uint64_t argmin = 0;
  bool min_dist_certified = false;  // min_dist > 1/(2 q_n), proved exactly
  double variation = 0.0;        // 4 q_n
  double sum_value = 0.0;        // sum_{m=1}^{q_n-1} 1/{{m alpha}}
  double bound = 0.0;            // 16 q_n
  double ratio = 0.0;            // |sum_value| / q_n
  bool passed = false;
};

/// Koksma-Hlawka chain for the reciprocal sum at N = q_n - 1. Requires n >= 1.
KHReport kh_lemma_check(const AlphaContext& alpha, std::size_t n, const Budget& budget = {});

}  // namespace ostrowski
