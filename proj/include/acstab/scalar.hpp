#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace acstab {

using Rational = mpq_class;

enum class ScalarMode { exact, floating };

std::string_view to_string(ScalarMode mode);
ScalarMode parse_scalar_mode(std::string_view text);

/// Parses "7", "-3/4", "0.125" or "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);

/// Exact binary value of a finite double.
Rational rational_from_double(double value);

/// Nearest double (ties to even); for display of exact inputs.
double rational_to_nearest_double(const Rational& value);

/// Canonical "p/q" (or "p" for integers) text.
std::string rational_to_string(const Rational& value);

/// A number that is either an arbitrary-precision rational or a 64-bit
/// binary float. The mode travels with the value; arithmetic between
/// values of different modes throws ErrorCode::mode_mismatch.
class Scalar {
 public:
  explicit Scalar(double value);
  explicit Scalar(Rational value);

  static Scalar zero(ScalarMode mode);
  static Scalar from_integer(std::int64_t value, ScalarMode mode);
  /// Rounds toward zero when converting to floating mode.
  static Scalar from_rational(const Rational& value, ScalarMode mode);

  ScalarMode mode() const noexcept {
    return std::holds_alternative<double>(value_) ? ScalarMode::floating : ScalarMode::exact;
  }
  bool is_exact() const noexcept { return mode() == ScalarMode::exact; }

  /// Throws mode_mismatch in floating mode.
  const Rational& rational() const;
  /// Throws mode_mismatch in exact mode.
  double floating() const;

  /// Lossy view in either mode (exact values truncate toward zero).
  double to_double() const;
  bool is_zero() const;
  int sign() const;

  Scalar abs() const;
  Scalar operator-() const;
  /// Multiplies by 2^k; exact in both modes barring float overflow.
  Scalar ldexp(int k) const;
  Scalar in_mode(ScalarMode mode) const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  friend bool operator==(const Scalar& lhs, const Scalar& rhs);
  friend std::partial_ordering operator<=>(const Scalar& lhs, const Scalar& rhs);

  /// "p/q" in exact mode, shortest round-trip decimal in floating mode.
  std::string to_string() const;

 private:
  std::variant<double, Rational> value_;
};

}  // namespace acstab
