#include "acstab/sampling.hpp"

#include <limits>

#include "acstab/errors.hpp"

namespace acstab {

std::uint64_t Sampler::below(std::uint64_t n) {
  if (n == 0) fail(ErrorCode::invalid_argument, "empty sampling range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

std::int64_t Sampler::between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) fail(ErrorCode::invalid_argument, "sampling range is reversed");
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  return lo + static_cast<std::int64_t>(below(span));
}

Rational Sampler::dyadic(std::int64_t lo, std::int64_t hi, int bits) {
  if (bits < 0 || bits > 30) fail(ErrorCode::invalid_argument, "denominator bits must be in [0, 30]");
  const std::int64_t scale = std::int64_t{1} << bits;
  Rational r(mpz_class(static_cast<long>(between(lo * scale, hi * scale))), mpz_class(static_cast<long>(scale)));
  r.canonicalize();
  return r;
}

Point Sampler::point(std::size_t dim, ScalarMode mode, NormKind norm, std::int64_t lo,
                     std::int64_t hi, int bits) {
  std::vector<Scalar> coords;
  coords.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) coords.push_back(Scalar::from_rational(dyadic(lo, hi, bits), mode));
  return Point(std::move(coords), norm);
}

Rational Sampler::coefficient() {
  Rational r(mpz_class(static_cast<long>(between(-8, 8))), mpz_class(1L << between(0, 2)));
  r.canonicalize();
  return r;
}

FuncModel Sampler::random_linear(std::size_t d, std::size_t m) {
  Matrix a(m, std::vector<Rational>(d));
  for (auto& row : a)
    for (auto& v : row) v = coefficient();
  return FuncModel(d, m, {LinearAtom{std::move(a)}});
}

FuncModel Sampler::random_cubic(std::size_t d, std::size_t m) {
  std::vector<Tensor3> tensors(m, Tensor3(d, Matrix(d, std::vector<Rational>(d))));
  for (auto& t : tensors)
    for (auto& slab : t)
      for (auto& row : slab)
        for (auto& v : row) v = coefficient();
  return FuncModel(d, m, {CubicAtom{std::move(tensors)}});
}

FuncModel Sampler::random_even(std::size_t d, std::size_t m) {
  std::vector<Matrix> forms(m, Matrix(d, std::vector<Rational>(d)));
  for (auto& q : forms)
    for (auto& row : q)
      for (auto& v : row) v = coefficient();
  return FuncModel(d, m, {EvenAtom{std::move(forms)}});
}

}  // namespace acstab
