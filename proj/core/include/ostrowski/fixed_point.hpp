#pragma once

// Certified 192-bit fixed-point enclosure of m·alpha mod 1.
//
// alpha mod 1 is stored as F = floor(frac(alpha)·2^192) together with a
// width W such that frac(alpha)·2^192 lies in [F, F + W). Then for any k,
// k·alpha mod 1 lies in [k·F, k·F + k·W) (mod 2^192), so every value read
// from a stream carries a rigorous error bound. Bulk loops use this instead
// of per-term big-integer arithmetic.

#include <array>
#include <cstdint>

#include "ostrowski/alpha.hpp"

namespace ostrowski {

__extension__ using u128 = unsigned __int128;

/// Unsigned 192-bit integer, arithmetic mod 2^192. w[0] is least significant.
struct U192 {
  std::array<std::uint64_t, 3> w{};

  static U192 from_integer(const Integer& v);  // v mod 2^192
  Integer to_integer() const;

  U192& operator+=(const U192& o) {
    u128 s = static_cast<u128>(w[0]) + o.w[0];
    w[0] = static_cast<std::uint64_t>(s);
    s = static_cast<u128>(w[1]) + o.w[1] + static_cast<std::uint64_t>(s >> 64);
    w[1] = static_cast<std::uint64_t>(s);
    w[2] = w[2] + o.w[2] + static_cast<std::uint64_t>(s >> 64);
    return *this;
  }
  U192 operator+(const U192& o) const {
    U192 r = *this;
    r += o;
    return r;
  }
  U192 operator-() const;
  U192 operator-(const U192& o) const { return *this + (-o); }
  U192 operator*(std::uint64_t k) const;

  bool negative() const { return (w[2] >> 63) != 0; }
  bool operator==(const U192&) const = default;
  std::strong_ordering operator<=>(const U192& o) const;
};

/// Number of significant bits (0 for zero).
int bit_length(const U192& v);
int bit_length(u128 v);

/// value / 2^192 as a double, correctly rounded up to the dropped low bits.
double to_unit_double(const U192& magnitude);

/// One certified reading of {{k·alpha}}: the true value lies in
/// [raw, raw + err] (as signed 192-bit units, no wrap past 1/2).
struct FixedFrac {
  U192 raw;       // two's-complement signed value in units of 2^-192
  u128 err = 0;   // upper bound on the enclosure width in units

  bool negative() const { return raw.negative(); }
  /// |raw| as an unsigned magnitude.
  U192 magnitude() const { return negative() ? -raw : raw; }
  /// Certified lower bound on |{{k·alpha}}| in units (0 if it may vanish).
  U192 abs_lower_bound() const;
  double value() const;
};

class FixedPointAlpha {
 public:
  /// Builds the enclosure from `cf.alpha`. Surds are exact to one
  /// unit; periodic specs are expanded until the width is at most 2 units;
  /// finite heads use what they have and fail later if it is not enough.
  explicit FixedPointAlpha(const ContinuedFraction& cf);

  const U192& base() const { return base_; }
  std::uint64_t width() const { return width_; }

  /// Certified {{k·alpha}} for k >= 1 (no relative-precision check).
  FixedFrac at(std::uint64_t k) const;

 private:
  U192 base_;
  std::uint64_t width_ = 1;
};

/// Walks {{j·step·alpha}} for j = first, first + 1, ... by repeated addition.
class FracStream {
 public:
  FracStream(const FixedPointAlpha& alpha, std::uint64_t step, std::uint64_t first = 1);

  /// Current index j (the one the next read returns).
  std::uint64_t index() const { return index_; }

  /// {{j·step·alpha}} with relative error at most 2^-51. Throws
  /// InsufficientPrecision if the enclosure cannot certify that, including
  /// a sign or half-boundary ambiguity.
  double next_certified();

  /// Same value with only an absolute error guarantee (enclosure width plus
  /// double rounding); suitable for e(x), which is continuous.
  double next_absolute();

  /// Raw certified reading for exact comparisons.
  FixedFrac next_raw();

 private:
  void advance();

  U192 current_;
  U192 increment_;
  u128 err_ = 0;
  u128 err_increment_ = 0;
  std::uint64_t index_ = 1;
};

/// Throws InsufficientPrecision unless the reading has relative error below
/// 2^-52 and no sign or half-boundary ambiguity.
void certify_relative(const FixedFrac& f);

}  // namespace ostrowski
