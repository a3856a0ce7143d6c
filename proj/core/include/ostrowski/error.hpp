#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ostrowski {

enum class ErrorCode {
  kInsufficientQuotients,
  kInvalidSurd,
  kInsufficientPrecision,
  kRangeExceeded,
  kIndexOutOfRange,
  kDegenerateDenominator,
  kDegenerateModulus,
  kDomainError,
  kBudgetExceeded,
  kInvalidArgument,
  kParseError,
  kPerfectSquare,
};

/// Stable machine-readable name, used verbatim in JSON error output.
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ostrowski
