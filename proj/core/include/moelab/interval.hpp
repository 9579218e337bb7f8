#pragma once

#include <mpfr.h>

#include <string>

#include "moelab/bigint.hpp"

namespace moelab {

/// A closed interval [lo, hi] of reals with directed-rounding endpoints.
/// Every operation rounds the lower endpoint down and the upper endpoint up,
/// so the true real result of the exact computation is always enclosed.
/// Used wherever a certificate needs a machine-checkable inequality between
/// quantities like N^{1/N} at N ~ 10^84, where double arithmetic and naive
/// exp/log formulations both lose.
class IntervalReal {
 public:
  /// Default working precision in bits.
  static constexpr mpfr_prec_t kDefaultPrecision = 256;

  explicit IntervalReal(mpfr_prec_t precision = kDefaultPrecision);
  IntervalReal(const IntervalReal& other);
  IntervalReal(IntervalReal&& other) noexcept;
  IntervalReal& operator=(const IntervalReal& other);
  IntervalReal& operator=(IntervalReal&& other) noexcept;
  ~IntervalReal();

  /// Exactly representable points.
  static IntervalReal exact(long value, mpfr_prec_t precision = kDefaultPrecision);
  static IntervalReal exact(const BigInt& value, mpfr_prec_t precision = kDefaultPrecision);
  static IntervalReal exact(double value, mpfr_prec_t precision = kDefaultPrecision);
  /// Decimal string, enclosed outward (the string need not be representable).
  static IntervalReal from_decimal(const std::string& text,
                                   mpfr_prec_t precision = kDefaultPrecision);
  /// Arbitrary enclosure from two doubles.
  static IntervalReal hull(double lo, double hi, mpfr_prec_t precision = kDefaultPrecision);
  /// Enclosure of max(a, b): endpoint-wise maxima.
  static IntervalReal max(const IntervalReal& a, const IntervalReal& b);

  mpfr_prec_t precision() const noexcept { return precision_; }

  IntervalReal operator+(const IntervalReal& o) const;
  IntervalReal operator-(const IntervalReal& o) const;
  IntervalReal operator*(const IntervalReal& o) const;
  /// Throws DomainError when o contains zero.
  IntervalReal operator/(const IntervalReal& o) const;
  IntervalReal operator-() const;

  /// Throws DomainError when the interval reaches below 0.
  IntervalReal sqrt() const;
  /// Throws DomainError when the interval reaches <= 0.
  IntervalReal ln() const;
  /// log(1+x) evaluated without forming 1+x (keeps tiny x meaningful).
  IntervalReal log1p() const;
  IntervalReal exp() const;
  /// exp(x)-1 evaluated without cancellation.
  IntervalReal expm1() const;

  /// Certain comparisons: true only when every point of one interval relates
  /// to every point of the other.
  bool strictly_less(const IntervalReal& o) const;     // hi < o.lo
  bool certainly_leq(const IntervalReal& o) const;     // hi <= o.lo
  bool strictly_greater(const IntervalReal& o) const;  // lo > o.hi
  bool contains(double x) const;
  bool is_positive() const;  // lo > 0

  double lo_double() const;  // rounded toward -inf
  double hi_double() const;  // rounded toward +inf
  double midpoint() const;
  double width() const;

  /// Decimal rendering "[lo, hi]" with enough digits to be re-readable.
  std::string to_string(int digits = 20) const;

 private:
  void init(mpfr_prec_t precision);
  mpfr_t lo_;
  mpfr_t hi_;
  mpfr_prec_t precision_;
};

}  // namespace moelab
