#include "ostrowski/context.hpp"

#include <algorithm>
#include <string>

#include "ostrowski/error.hpp"

namespace ostrowski {
namespace {

std::size_t clamp_levels(const AlphaSpec& spec, std::size_t levels) {
  if (const auto avail = spec.available_quotients()) {
    return std::min(levels, *avail - 1);
  }
  return levels;
}

std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

}  // namespace

void Budget::require(u128 cost, std::string_view what) const {
  if (cost > max_terms) {
    fail(ErrorCode::kBudgetExceeded, std::string(what) + " needs " + u128_to_string(cost) +
                                         " term evaluations, budget is " +
                                         std::to_string(max_terms));
  }
}

AlphaContext::AlphaContext(const AlphaSpec& spec, std::size_t levels)
    : cf_(continued_fraction(spec, clamp_levels(spec, levels))), fixed_(cf_) {}

std::uint64_t AlphaContext::q64(std::size_t n) const {
  if (n >= cf_.size()) {
    fail(ErrorCode::kIndexOutOfRange, "q_" + std::to_string(n) + " is beyond the " +
                                          std::to_string(cf_.size()) + " computed convergents");
  }
  const Integer& q = cf_.q(n);
  if (!mpz_fits_ulong_p(q.get_mpz_t())) {
    fail(ErrorCode::kRangeExceeded, "q_" + std::to_string(n) + " = " + q.get_str() +
                                        " does not fit in 64 bits");
  }
  return q.get_ui();
}

}  // namespace ostrowski
