#include "acstab/control.hpp"

#include <cmath>
#include <limits>

#include "acstab/errors.hpp"

namespace acstab {

namespace {

void check_nonnegative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v))
    fail(ErrorCode::invalid_argument, std::string(what) + " must be finite and >= 0");
}

double power(double base, double exponent) {
  return exponent == 0.0 ? 1.0 : std::pow(base, exponent);
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// exponent * log2_norm with 0 * (-inf) taken as 0.
double scaled_log(double exponent, double log2_norm) {
  return exponent == 0.0 ? 0.0 : exponent * log2_norm;
}

}  // namespace

ControlFunction::ControlFunction(ConstantPhi phi) : phi_(phi) { check_nonnegative(phi.c, "phi constant"); }

ControlFunction::ControlFunction(SumOfPowersPhi phi) : phi_(phi) {
  check_nonnegative(phi.theta, "theta");
  check_nonnegative(phi.p, "p");
}

ControlFunction::ControlFunction(ProductOfPowersPhi phi) : phi_(phi) {
  check_nonnegative(phi.theta, "theta");
  check_nonnegative(phi.r, "r");
  check_nonnegative(phi.s, "s");
}

double ControlFunction::operator()(const Point& x, const Point& y) const {
  return (*this)(x.norm(), y.norm());
}

double ControlFunction::operator()(double norm_x, double norm_y) const {
  return std::visit(
      [&](const auto& phi) -> double {
        using T = std::decay_t<decltype(phi)>;
        if constexpr (std::is_same_v<T, ConstantPhi>)
          return phi.c;
        else if constexpr (std::is_same_v<T, SumOfPowersPhi>)
          return phi.theta * (power(norm_x, phi.p) + power(norm_y, phi.p));
        else
          return phi.theta * power(norm_x, phi.r) * power(norm_y, phi.s);
      },
      phi_);
}

double ControlFunction::scaling_exponent() const {
  return std::visit(
      [](const auto& phi) -> double {
        using T = std::decay_t<decltype(phi)>;
        if constexpr (std::is_same_v<T, ConstantPhi>)
          return 0.0;
        else if constexpr (std::is_same_v<T, SumOfPowersPhi>)
          return phi.p;
        else
          return phi.r + phi.s;
      },
      phi_);
}

double ControlFunction::log2_diagonal(double log2_norm) const {
  return std::visit(
      [&](const auto& phi) -> double {
        using T = std::decay_t<decltype(phi)>;
        if constexpr (std::is_same_v<T, ConstantPhi>) {
          return phi.c == 0.0 ? kNegInf : std::log2(phi.c);
        } else if constexpr (std::is_same_v<T, SumOfPowersPhi>) {
          if (phi.theta == 0.0) return kNegInf;
          return 1.0 + std::log2(phi.theta) + scaled_log(phi.p, log2_norm);
        } else {
          if (phi.theta == 0.0) return kNegInf;
          return std::log2(phi.theta) + scaled_log(phi.r + phi.s, log2_norm);
        }
      },
      phi_);
}

}  // namespace acstab
