#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "ostrowski/alpha.hpp"
#include "ostrowski/fixed_point.hpp"

namespace ostrowski {

/// Upper limit on term evaluations for a single operation. O(M) sums cost M,
/// O(N^2) scans cost N^2. The default admits the O(N^2) discrepancy scan up
/// to N = 8192.
struct Budget {
  static constexpr std::uint64_t kDefault = std::uint64_t{8192} * 8192;

  std::uint64_t max_terms = kDefault;

  /// Throws BudgetExceeded when `cost` is above the limit.
  void require(u128 cost, std::string_view what) const;
};

/// Everything derived once per alpha: the continued fraction through a
/// fixed number of levels and the certified fixed-point enclosure.
class AlphaContext {
 public:
  static constexpr std::size_t kDefaultLevels = 64;

  /// Levels are clamped to what a finite head provides.
  explicit AlphaContext(const AlphaSpec& spec, std::size_t levels = kDefaultLevels);

  const AlphaSpec& spec() const { return cf_.alpha; }
  const ContinuedFraction& cf() const { return cf_; }
  const FixedPointAlpha& fixed() const { return fixed_; }

  /// q_n as an unsigned 64-bit value; throws RangeExceeded if it does not fit.
  std::uint64_t q64(std::size_t n) const;

 private:
  ContinuedFraction cf_;
  FixedPointAlpha fixed_;
};

}  // namespace ostrowski
