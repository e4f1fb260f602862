#include <cmath>
#include <cstdint>
#include <vector>

#include "acstab/errors.hpp"
#include "acstab/model.hpp"

namespace acstab {

namespace {

// SplitMix64 finalizer.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// round-half-up of x * 2^kNoiseQuantumBits, i.e. floor(x * 2^40 + 1/2).
mpz_class quantize(const Rational& x) {
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  mpz_class scaled;
  mpz_mul_2exp(scaled.get_mpz_t(), num.get_mpz_t(), kNoiseQuantumBits + 1);
  scaled += den;
  mpz_class twice_den = den * 2;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), twice_den.get_mpz_t());
  return q;
}

mpz_class quantize(double x) {
  const double v = std::ldexp(x, kNoiseQuantumBits);
  if (std::fabs(v) < 0x1p52) return mpz_class(std::floor(v + 0.5));
  return mpz_class(v);  // already an integer
}

std::uint64_t absorb(std::uint64_t h, const mpz_class& q) {
  h = mix(h ^ static_cast<std::uint64_t>(sgn(q) + 1));
  const std::size_t words = (mpz_sizeinbase(q.get_mpz_t(), 2) + 63) / 64;
  std::vector<std::uint64_t> buf(words + 1, 0);
  std::size_t count = 0;
  mpz_export(buf.data(), &count, -1, sizeof(std::uint64_t), 0, 0, q.get_mpz_t());
  for (std::size_t i = 0; i < count; ++i) h = mix(h ^ buf[i]);
  return mix(h ^ static_cast<std::uint64_t>(count));
}

// Smallest integer k with k*k >= n.
std::uint64_t ceil_sqrt(std::uint64_t n) {
  std::uint64_t k = 1;
  while (k * k < n) ++k;
  return k;
}

}  // namespace

Point noise_eval(std::uint64_t seed, const Point& x, const Rational& epsilon, double exponent,
                 std::size_t codomain_dim) {
  if (sgn(epsilon) < 0) fail(ErrorCode::invalid_argument, "noise amplitude must be >= 0");
  if (!(exponent >= 0.0) || !std::isfinite(exponent))
    fail(ErrorCode::invalid_argument, "noise exponent must be finite and >= 0");
  if (codomain_dim == 0) fail(ErrorCode::dimension_mismatch, "noise codomain must be non-empty");

  const ScalarMode mode = x.mode();
  if (sgn(epsilon) == 0) return Point::zeros(codomain_dim, mode, x.norm_kind());

  Rational amplitude;
  if (exponent == 0.0) {
    amplitude = epsilon;
  } else {
    const double nx = x.norm();
    if (nx == 0.0) return Point::zeros(codomain_dim, mode, x.norm_kind());
    // Shaved so that rounding in pow and the norm cannot lift us over the envelope.
    const double a = epsilon.get_d() * std::pow(nx, exponent) * (1.0 - 0x1p-30);
    if (!std::isfinite(a)) fail(ErrorCode::overflow_guard, "noise amplitude overflow");
    amplitude = Rational(a);
  }

  std::uint64_t h = mix(seed);
  for (const auto& c : x.coords())
    h = absorb(h, c.is_exact() ? quantize(c.rational()) : quantize(c.floating()));

  // Each raw coordinate lies in [-1, 1); dividing by ceil(sqrt(m)) keeps the
  // Euclidean norm <= 1, and the max norm is already <= 1.
  const std::uint64_t divisor =
      x.norm_kind() == NormKind::max ? 1 : ceil_sqrt(static_cast<std::uint64_t>(codomain_dim));
  mpz_class level_den;
  mpz_ui_pow_ui(level_den.get_mpz_t(), 2, kNoiseLevelBits);
  level_den *= static_cast<unsigned long>(divisor);

  std::vector<Scalar> out;
  out.reserve(codomain_dim);
  for (std::size_t k = 0; k < codomain_dim; ++k) {
    const std::uint64_t u = mix(h ^ ((k + 1) * 0xd1b54a32d192ed03ULL));
    const long level = static_cast<long>(u >> (64 - (kNoiseLevelBits + 1))) - (1L << kNoiseLevelBits);
    Rational value(mpz_class(level), level_den);
    value.canonicalize();
    value *= amplitude;
    out.push_back(Scalar::from_rational(value, mode));
  }
  return Point(std::move(out), x.norm_kind());
}

}  // namespace acstab
