#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "acstab/model.hpp"
#include "acstab/point.hpp"

namespace acstab {

/// Portable sampler: std::mt19937_64 (whose output sequence is fixed by the
/// C++ standard) with rejection-sampled bounded integers, so the same seed
/// gives the same samples on every conforming platform. Coordinates are
/// dyadic rationals k / 2^bits, exactly representable in both scalar modes.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  /// Uniform over {k / 2^bits : lo <= k / 2^bits <= hi}.
  Rational dyadic(std::int64_t lo, std::int64_t hi, int bits);
  Point point(std::size_t dim, ScalarMode mode, NormKind norm, std::int64_t lo, std::int64_t hi,
              int bits);

  /// Small rational coefficient n / 2^k with |n| <= 8, k in {0, 1, 2}.
  Rational coefficient();

  FuncModel random_linear(std::size_t d, std::size_t m);
  FuncModel random_cubic(std::size_t d, std::size_t m);
  FuncModel random_even(std::size_t d, std::size_t m);

 private:
  std::mt19937_64 engine_;
};

}  // namespace acstab
