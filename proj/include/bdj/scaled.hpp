#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace bdj {

/// Nonnegative scalar stored as mantissa * 2^exponent with mantissa in
/// [1, 2) (or exactly 0). Keeps products of hundreds of matrices out of
/// double overflow/underflow territory; power-of-two rescaling is exact.
class ScaledScalar {
public:
  ScaledScalar() = default;  // zero

  /// Normalizes an arbitrary nonnegative mantissa against a base exponent.
  ScaledScalar(double mantissa, std::int64_t exponent) {
    if (mantissa != 0.0) {
      int k = 0;
      const double f = std::frexp(mantissa, &k);  // mantissa = f * 2^k, f in [0.5,1)
      mantissa_ = 2.0 * f;
      exponent_ = exponent + k - 1;
    }
  }

  static ScaledScalar one() { return ScaledScalar(1.0, 0); }
  static ScaledScalar from_double(double v) { return ScaledScalar(v, 0); }

  double mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }
  bool is_zero() const { return mantissa_ == 0.0; }

  /// Saturates to +inf / 0 when the exponent leaves double range.
  double to_double() const {
    if (is_zero()) return 0.0;
    if (exponent_ > 1024) return std::numeric_limits<double>::infinity();
    if (exponent_ < -1100) return 0.0;
    return std::ldexp(mantissa_, static_cast<int>(exponent_));
  }

  /// log2 of the represented value; -inf for zero.
  double log2_value() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log2(mantissa_) + static_cast<double>(exponent_);
  }

  friend ScaledScalar operator*(const ScaledScalar& a, const ScaledScalar& b) {
    if (a.is_zero() || b.is_zero()) return ScaledScalar();
    return ScaledScalar(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
  }

  friend ScaledScalar operator*(const ScaledScalar& a, double c) {
    if (a.is_zero() || c == 0.0) return ScaledScalar();
    return ScaledScalar(a.mantissa_ * c, a.exponent_);
  }

  ScaledScalar& operator+=(const ScaledScalar& other) {
    if (other.is_zero()) return *this;
    if (is_zero()) {
      *this = other;
      return *this;
    }
    const std::int64_t d = other.exponent_ - exponent_;
    if (d > 64) {
      *this = other;
    } else if (d >= -64) {
      *this = ScaledScalar(mantissa_ + std::ldexp(other.mantissa_, static_cast<int>(d)),
                           exponent_);
    }  // d < -64: other is negligible at double precision
    return *this;
  }

  friend ScaledScalar operator+(ScaledScalar a, const ScaledScalar& b) {
    a += b;
    return a;
  }

  friend bool operator<(const ScaledScalar& a, const ScaledScalar& b) {
    if (a.is_zero()) return !b.is_zero();
    if (b.is_zero()) return false;
    if (a.exponent_ != b.exponent_) return a.exponent_ < b.exponent_;
    return a.mantissa_ < b.mantissa_;
  }

  /// a / b as a plain double, saturating on exponent overflow.
  friend double ratio(const ScaledScalar& a, const ScaledScalar& b) {
    if (a.is_zero()) return 0.0;
    if (b.is_zero()) return std::numeric_limits<double>::infinity();
    const std::int64_t d = a.exponent_ - b.exponent_;
    if (d > 1024) return std::numeric_limits<double>::infinity();
    if (d < -1100) return 0.0;
    return std::ldexp(a.mantissa_ / b.mantissa_, static_cast<int>(d));
  }

private:
  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

}  // namespace bdj
