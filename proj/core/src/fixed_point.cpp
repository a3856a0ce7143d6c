#include "ostrowski/fixed_point.hpp"

#include <bit>
#include <cmath>

#include "ostrowski/error.hpp"

namespace ostrowski {
namespace {

constexpr unsigned kBits = 192;

Integer two_pow(unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

Integer floor_scaled(const Rational& x) {
  Integer num = x.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), kBits);
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer ceil_scaled(const Rational& x) {
  Integer num = x.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), kBits);
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
  return q;
}

// 2^191, the signed boundary (value 1/2).
constexpr std::uint64_t kHalfTop = std::uint64_t{1} << 63;

}  // namespace

U192 U192::from_integer(const Integer& v) {
  Integer r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), v.get_mpz_t(), kBits);
  U192 out;
  std::size_t count = 0;
  mpz_export(out.w.data(), &count, -1, sizeof(std::uint64_t), 0, 0, r.get_mpz_t());
  return out;
}

Integer U192::to_integer() const {
  Integer r = 0;
  for (int i = 2; i >= 0; --i) {
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), 64);
    Integer limb;
    mpz_import(limb.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &w[i]);
    r += limb;
  }
  return r;
}

U192 U192::operator-() const {
  U192 r;
  for (int i = 0; i < 3; ++i) r.w[i] = ~w[i];
  U192 one;
  one.w[0] = 1;
  r += one;
  return r;
}

U192 U192::operator*(std::uint64_t k) const {
  U192 r;
  u128 carry = 0;
  for (int i = 0; i < 3; ++i) {
    const u128 p = static_cast<u128>(w[i]) * k + carry;
    r.w[i] = static_cast<std::uint64_t>(p);
    carry = p >> 64;
  }
  return r;
}

std::strong_ordering U192::operator<=>(const U192& o) const {
  for (int i = 2; i >= 0; --i) {
    if (w[i] != o.w[i]) return w[i] <=> o.w[i];
  }
  return std::strong_ordering::equal;
}

int bit_length(const U192& v) {
  for (int i = 2; i >= 0; --i) {
    if (v.w[i] != 0) return 64 * i + (64 - std::countl_zero(v.w[i]));
  }
  return 0;
}

int bit_length(u128 v) {
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  if (hi != 0) return 64 + (64 - std::countl_zero(hi));
  const auto lo = static_cast<std::uint64_t>(v);
  return lo == 0 ? 0 : 64 - std::countl_zero(lo);
}

double to_unit_double(const U192& m) {
  const int bits = bit_length(m);
  if (bits == 0) return 0.0;
  // Take the top 128 significant bits into a u128, converted in one rounding.
  const int shift = kBits - bits;  // left shift to normalize
  U192 n = m;
  if (shift > 0) {
    const int words = shift / 64;
    const int rem = shift % 64;
    std::array<std::uint64_t, 3> s{};
    for (int i = 2; i >= words; --i) s[i] = n.w[i - words];
    if (rem > 0) {
      for (int i = 2; i > 0; --i) s[i] = (s[i] << rem) | (s[i - 1] >> (64 - rem));
      s[0] <<= rem;
    }
    n.w = s;
  }
  const u128 top = (static_cast<u128>(n.w[2]) << 64) | n.w[1];
  return std::ldexp(static_cast<double>(top), -128 - shift);
}

U192 FixedFrac::abs_lower_bound() const {
  const U192 mag = magnitude();
  if (!negative()) return mag;
  // True value in [raw, raw + err]; |true| >= |raw| - err.
  U192 e;
  e.w[0] = static_cast<std::uint64_t>(err);
  e.w[1] = static_cast<std::uint64_t>(err >> 64);
  if (mag <= e) return U192{};
  return mag - e;
}

double FixedFrac::value() const {
  const double v = to_unit_double(magnitude());
  return negative() ? -v : v;
}

void certify_relative(const FixedFrac& f) {
  const U192 mag = f.magnitude();
  // |raw| >= 2^(bits-1) >= err·2^52 guarantees relative width < 2^-52 and
  // rules out a zero crossing.
  if (bit_length(mag) < bit_length(f.err) + 53) {
    fail(ErrorCode::kInsufficientPrecision,
         "fixed-point enclosure too wide to certify a fractional part");
  }
  if (!f.negative() && f.raw.w[2] == kHalfTop - 1) {
    // Close to +1/2: make sure raw + err stays below 2^191.
    U192 half;
    half.w[2] = kHalfTop;
    const U192 gap = half - f.raw;
    U192 e;
    e.w[0] = static_cast<std::uint64_t>(f.err);
    e.w[1] = static_cast<std::uint64_t>(f.err >> 64);
    if (gap <= e) {
      fail(ErrorCode::kInsufficientPrecision, "fractional part too close to 1/2 to certify its sign");
    }
  }
}

FixedPointAlpha::FixedPointAlpha(const ContinuedFraction& cf) {
  if (cf.alpha.is_surd()) {
    const Surd& s = cf.alpha.as_surd();
    const Integer scale = two_pow(kBits);
    const QuadraticSurd scaled(s.P * scale, scale, s.Q, s.D);
    base_ = U192::from_integer(scaled.floor());
    width_ = 1;
    return;
  }
  std::optional<ContinuedFraction> local;
  const ContinuedFraction* current = &cf;
  const auto limit = cf.alpha.available_quotients();
  for (;;) {
    const RationalInterval enc = alpha_enclosure(*current);
    const Integer lo = floor_scaled(enc.lo);
    const Integer hi = ceil_scaled(enc.hi);
    const Integer w = hi - lo;
    const bool can_extend = !limit || current->size() < *limit;
    if (w <= 2 || !can_extend) {
      if (!mpz_fits_ulong_p(w.get_mpz_t()) || w > Integer(1) << 32) {
        fail(ErrorCode::kInsufficientPrecision,
             "partial quotient head too short for a 192-bit enclosure of alpha");
      }
      base_ = U192::from_integer(lo);
      width_ = w.get_ui();
      return;
    }
    std::size_t target = 2 * current->last_index() + 8;
    if (limit) target = std::min(target, *limit - 1);
    local = continued_fraction(cf.alpha, target);
    current = &*local;
  }
}

FixedFrac FixedPointAlpha::at(std::uint64_t k) const {
  return FixedFrac{base_ * k, static_cast<u128>(k) * width_};
}

FracStream::FracStream(const FixedPointAlpha& alpha, std::uint64_t step, std::uint64_t first)
    : increment_(alpha.base() * step),
      err_increment_(static_cast<u128>(step) * alpha.width()),
      index_(first) {
  current_ = increment_ * first;
  err_ = err_increment_ * first;
}

void FracStream::advance() {
  current_ += increment_;
  err_ += err_increment_;
  ++index_;
}

FixedFrac FracStream::next_raw() {
  FixedFrac f{current_, err_};
  advance();
  return f;
}

double FracStream::next_certified() {
  const FixedFrac f{current_, err_};
  certify_relative(f);
  advance();
  return f.value();
}

double FracStream::next_absolute() {
  const FixedFrac f{current_, err_};
  advance();
  return f.value();
}

}  // namespace ostrowski
