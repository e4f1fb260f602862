#include "acstab/point.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "acstab/errors.hpp"

namespace acstab {

std::string_view to_string(NormKind kind) {
  return kind == NormKind::euclidean ? "euclidean" : "max";
}

NormKind parse_norm_kind(std::string_view text) {
  if (text == "euclidean") return NormKind::euclidean;
  if (text == "max") return NormKind::max;
  fail(ErrorCode::parse_error, "unknown norm kind '" + std::string(text) + "'");
}

Point::Point() : coords_{Scalar::zero(ScalarMode::exact)}, norm_(NormKind::euclidean) {}

Point::Point(std::vector<Scalar> coords, NormKind norm) : coords_(std::move(coords)), norm_(norm) {
  if (coords_.empty()) fail(ErrorCode::dimension_mismatch, "a point needs at least one coordinate");
  const auto m = coords_.front().mode();
  for (const auto& c : coords_)
    if (c.mode() != m) fail(ErrorCode::mode_mismatch, "point coordinates mix exact and float");
}

Point Point::zeros(std::size_t dim, ScalarMode mode, NormKind norm) {
  return Point(std::vector<Scalar>(dim, Scalar::zero(mode)), norm);
}

Point Point::from_doubles(std::span<const double> coords, ScalarMode mode, NormKind norm) {
  std::vector<Scalar> out;
  out.reserve(coords.size());
  for (double c : coords) out.push_back(Scalar(c).in_mode(mode));
  return Point(std::move(out), norm);
}

Point Point::from_rationals(std::span<const Rational> coords, ScalarMode mode, NormKind norm) {
  std::vector<Scalar> out;
  out.reserve(coords.size());
  for (const auto& c : coords) out.push_back(Scalar::from_rational(c, mode));
  return Point(std::move(out), norm);
}

double Point::norm() const {
  double largest = 0.0;
  for (const auto& c : coords_) largest = std::max(largest, std::fabs(c.to_double()));
  if (norm_ == NormKind::max || largest == 0.0 || !std::isfinite(largest)) return largest;
  double sum = 0.0;
  for (const auto& c : coords_) {
    const double r = c.to_double() / largest;
    sum += r * r;
  }
  return largest * std::sqrt(sum);
}

bool Point::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& c) { return c.is_zero(); });
}

std::vector<double> Point::to_doubles() const {
  std::vector<double> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(c.to_double());
  return out;
}

void Point::check_compatible(const Point& rhs) const {
  if (dim() != rhs.dim())
    fail(ErrorCode::dimension_mismatch,
         "points of dimension " + std::to_string(dim()) + " and " + std::to_string(rhs.dim()));
  if (mode() != rhs.mode()) fail(ErrorCode::mode_mismatch, "points in different scalar modes");
}

Point Point::operator-() const {
  Point out = *this;
  for (auto& c : out.coords_) c = -c;
  return out;
}

Point& Point::operator+=(const Point& rhs) {
  check_compatible(rhs);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
  return *this;
}

Point& Point::operator-=(const Point& rhs) {
  check_compatible(rhs);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
  return *this;
}

Point Point::scaled(const Scalar& factor) const {
  Point out = *this;
  for (auto& c : out.coords_) c *= factor;
  return out;
}

Point Point::scaled(std::int64_t factor) const { return scaled(Scalar::from_integer(factor, mode())); }

Point Point::ldexp(int k) const {
  Point out = *this;
  for (auto& c : out.coords_) c = c.ldexp(k);
  return out;
}

Point Point::in_mode(ScalarMode target) const {
  Point out = *this;
  for (auto& c : out.coords_) c = c.in_mode(target);
  return out;
}

Point Point::combine(std::int64_t a, const Point& x, std::int64_t b, const Point& y) {
  x.check_compatible(y);
  const auto mode = x.mode();
  const Scalar sa = Scalar::from_integer(a, mode);
  const Scalar sb = Scalar::from_integer(b, mode);
  std::vector<Scalar> out;
  out.reserve(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) out.push_back(sa * x[i] + sb * y[i]);
  return Point(std::move(out), x.norm_kind());
}

bool operator==(const Point& lhs, const Point& rhs) {
  return lhs.norm_ == rhs.norm_ && lhs.coords_ == rhs.coords_;
}

}  // namespace acstab
