#pragma once

#include <variant>

#include "acstab/point.hpp"

namespace acstab {

/// phi(x, y) = c.
struct ConstantPhi {
  double c = 0.0;
};

/// phi(x, y) = theta (|x|^p + |y|^p).
struct SumOfPowersPhi {
  double theta = 0.0;
  double p = 0.0;
};

/// phi(x, y) = theta |x|^r |y|^s.
struct ProductOfPowersPhi {
  double theta = 0.0;
  double r = 0.0;
  double s = 0.0;
};

/// Nonnegative control function bounding |D_f(x, y)|. Powers use the
/// convention 0^0 = 1.
class ControlFunction {
 public:
  using Variant = std::variant<ConstantPhi, SumOfPowersPhi, ProductOfPowersPhi>;

  ControlFunction(ConstantPhi phi);         // NOLINT(google-explicit-constructor)
  ControlFunction(SumOfPowersPhi phi);      // NOLINT(google-explicit-constructor)
  ControlFunction(ProductOfPowersPhi phi);  // NOLINT(google-explicit-constructor)

  const Variant& variant() const noexcept { return phi_; }

  double operator()(const Point& x, const Point& y) const;
  double operator()(double norm_x, double norm_y) const;

  /// P such that phi(t x, t x) = t^P phi(x, x) for t > 0 (0 for Constant).
  double scaling_exponent() const;

  /// log2 phi(z, z) as a function of log2 |z|; -inf when phi(z, z) = 0.
  /// Lets series terms with huge weights be formed without overflow.
  double log2_diagonal(double log2_norm) const;

 private:
  ControlFunction::Variant phi_;
};

}  // namespace acstab
