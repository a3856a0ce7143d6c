#include "ostrowski/error.hpp"

namespace ostrowski {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInsufficientQuotients: return "InsufficientQuotients";
    case ErrorCode::kInvalidSurd: return "InvalidSurd";
    case ErrorCode::kInsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::kRangeExceeded: return "RangeExceeded";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kDegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::kDegenerateModulus: return "DegenerateModulus";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kPerfectSquare: return "PerfectSquare";
  }
  return "Unknown";
}

}  // namespace ostrowski
