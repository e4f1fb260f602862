#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "acstab/scalar.hpp"

namespace acstab {

enum class NormKind { euclidean, max };

std::string_view to_string(NormKind kind);
NormKind parse_norm_kind(std::string_view text);

/// An element of R^d carrying its norm. All coordinates share one scalar
/// mode; d >= 1.
class Point {
 public:
  /// The origin of R^1 in exact mode.
  Point();
  explicit Point(std::vector<Scalar> coords, NormKind norm = NormKind::euclidean);

  static Point zeros(std::size_t dim, ScalarMode mode, NormKind norm = NormKind::euclidean);
  /// Exact conversion of each double in exact mode.
  static Point from_doubles(std::span<const double> coords, ScalarMode mode,
                            NormKind norm = NormKind::euclidean);
  static Point from_rationals(std::span<const Rational> coords, ScalarMode mode,
                              NormKind norm = NormKind::euclidean);

  std::size_t dim() const noexcept { return coords_.size(); }
  ScalarMode mode() const noexcept { return coords_.front().mode(); }
  NormKind norm_kind() const noexcept { return norm_; }
  const std::vector<Scalar>& coords() const noexcept { return coords_; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }

  /// Norm under norm_kind(), evaluated in double precision.
  double norm() const;
  bool is_zero() const;
  std::vector<double> to_doubles() const;

  Point operator-() const;
  Point& operator+=(const Point& rhs);
  Point& operator-=(const Point& rhs);
  friend Point operator+(Point lhs, const Point& rhs) { return lhs += rhs; }
  friend Point operator-(Point lhs, const Point& rhs) { return lhs -= rhs; }

  Point scaled(const Scalar& factor) const;
  Point scaled(std::int64_t factor) const;
  /// Multiplies every coordinate by 2^k.
  Point ldexp(int k) const;
  Point in_mode(ScalarMode mode) const;

  /// a*x + b*y for integer a, b.
  static Point combine(std::int64_t a, const Point& x, std::int64_t b, const Point& y);

  friend bool operator==(const Point& lhs, const Point& rhs);

 private:
  void check_compatible(const Point& rhs) const;

  std::vector<Scalar> coords_;
  NormKind norm_;
};

}  // namespace acstab
