#pragma once

// Exact representation of an irrational alpha, its continued fraction,
// signed fractional parts {{m·alpha}}, Ostrowski numeration and the
// convergent error parameters psi_n, xi_n.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ostrowski/quadratic.hpp"

namespace ostrowski {

/// (P + √D)/Q with D > 0 not a perfect square and Q != 0.
struct Surd {
  Integer P;
  Integer D;
  Integer Q;
  bool operator==(const Surd&) const = default;
};

/// [a_0; head..., (tail)...]. Without a tail the head bounds the usable
/// index range and alpha is any irrational with that prefix.
struct PartialQuotients {
  std::vector<Integer> head;
  std::vector<Integer> periodic_tail;
  bool operator==(const PartialQuotients&) const = default;
};

class AlphaSpec {
 public:
  /// Throws InvalidSurd if D is not positive or is a perfect square.
  static AlphaSpec surd(Integer P, Integer D, Integer Q);
  static AlphaSpec golden_ratio() { return surd(1, 5, 2); }
  static AlphaSpec sqrt(Integer D) { return surd(0, std::move(D), 1); }
  static AlphaSpec partial_quotients(std::vector<Integer> head,
                                     std::vector<Integer> periodic_tail = {});

  bool is_surd() const { return std::holds_alternative<Surd>(value_); }
  const Surd& as_surd() const { return std::get<Surd>(value_); }
  const PartialQuotients& as_partial_quotients() const {
    return std::get<PartialQuotients>(value_);
  }

  /// Number of usable partial quotients, or nullopt if unbounded.
  std::optional<std::size_t> available_quotients() const;

  /// Canonical text form; round-trips through the CLI parser.
  std::string to_string() const;

  bool operator==(const AlphaSpec&) const = default;

 private:
  explicit AlphaSpec(std::variant<Surd, PartialQuotients> v) : value_(std::move(v)) {}
  std::variant<Surd, PartialQuotients> value_;
};

struct Convergent {
  Integer p;
  Integer q;
  bool operator==(const Convergent&) const = default;
};

/// a_0..a_N with their convergents p_k/q_k, k = 0..N.
struct ContinuedFraction {
  AlphaSpec alpha;
  std::vector<Integer> quotients;
  std::vector<Convergent> convergents;

  std::size_t size() const { return quotients.size(); }
  std::size_t last_index() const { return quotients.size() - 1; }
  const Integer& a(std::size_t k) const { return quotients.at(k); }
  const Integer& p(std::size_t k) const { return convergents.at(k).p; }
  const Integer& q(std::size_t k) const { return convergents.at(k).q; }
};

/// Open interval (lo, hi) known to contain a real value.
struct RationalInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  double midpoint() const;
};

using ExactValue = std::variant<QuadraticSurd, RationalInterval>;

double approximate(const ExactValue& v);

/// Exact sign when it can be certified: +1 or -1, 0 if the interval
/// straddles zero.
int certified_sign(const ExactValue& v);

/// Certified comparisons; an interval that cannot decide yields false.
bool certainly_less(const ExactValue& v, const Rational& r);
bool certainly_greater(const ExactValue& v, const Rational& r);

struct SignedFrac {
  Integer m;
  ExactValue exact;
  double approx = 0.0;
};

/// Digits c_1..c_{M+1}; coeffs[k] holds c_{k+1}, the multiplier of q_k.
struct OstrowskiExpansion {
  Integer m;
  std::vector<Integer> coeffs;
  std::size_t top = 0;  // M, with q_M <= m < q_{M+1}
};

struct ConvergentError {
  std::size_t n = 0;
  ExactValue psi;  // alpha - p_n/q_n
  ExactValue xi;   // q_n q_{n+1} psi_n
};

std::vector<Integer> partial_quotients(const AlphaSpec& spec, std::size_t n);

std::vector<Convergent> convergents(std::span<const Integer> quotients);

/// Quotients a_0..a_n and convergents of `spec`.
ContinuedFraction continued_fraction(const AlphaSpec& spec, std::size_t n);

/// Representative of x mod 1 in (-1/2, 1/2].
Rational signed_frac_scalar(const Rational& x);
QuadraticSurd signed_frac_scalar(const QuadraticSurd& x);
double signed_frac_scalar(double x);

/// Encloses alpha using the convergents in `cf`. For surds the result is
/// still an interval; callers wanting exactness use the surd directly.
RationalInterval alpha_enclosure(const ContinuedFraction& cf);

/// {{m·alpha}} exactly (surd) or by a certified enclosure whose relative
/// width is below 2^-51 (partial quotients). Periodic specs are expanded
/// further as needed; finite heads throw InsufficientPrecision.
SignedFrac frac_exact(const ContinuedFraction& cf, const Integer& m);

OstrowskiExpansion ostrowski_expand(const Integer& m, const ContinuedFraction& cf);
Integer ostrowski_eval(const OstrowskiExpansion& exp, const ContinuedFraction& cf);

/// psi_n and xi_n. Needs convergents through n + 1.
ConvergentError convergent_error(const ContinuedFraction& cf, std::size_t n);

/// min over 0 <= n <= n_max of q_n·||q_n alpha||.
double eps_alpha_estimate(const ContinuedFraction& cf, std::size_t n_max);

}  // namespace ostrowski
