#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "ostrowski/alpha.hpp"
#include "ostrowski/error.hpp"

namespace ostrowski::cli {

/// Parse failure carrying the 0-based offset of the offending character.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorCode::kParseError, what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Grammar:
///   phi | sqrt:D | surd:P,D,Q | cf:a0 | cf:a0;a1,...,ak | cf:a0;a1,...,(t1,...,tr)
/// `phi` is surd:1,5,2 and `sqrt:D` is surd:0,D,1. Whitespace is not allowed.
/// Throws ParseError, PerfectSquare (sqrt:D with square D) or InvalidSurd.
AlphaSpec parse_alpha(std::string_view text);

}  // namespace ostrowski::cli
