#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "acstab/point.hpp"
#include "acstab/scalar.hpp"

namespace acstab {

using Matrix = std::vector<std::vector<Rational>>;  // row-major
using Tensor3 = std::vector<std::vector<std::vector<Rational>>>;

/// x -> M x with M of shape m x d.
struct LinearAtom {
  Matrix matrix;
};

/// Output k is sum_{i,j,l} T_k[i][j][l] x_i x_j x_l. Tensors are symmetrized
/// when the owning FuncModel is built.
struct CubicAtom {
  std::vector<Tensor3> tensors;
};

/// Output k is x^T Q_k x. Even, so never a solution unless Q_k = 0; kept for
/// negative tests.
struct EvenAtom {
  std::vector<Matrix> forms;
};

/// Deterministic perturbation with norm <= epsilon everywhere.
struct BoundedNoiseAtom {
  std::uint64_t seed = 0;
  Rational epsilon;
};

/// Deterministic perturbation with norm <= epsilon * |x|^exponent.
struct PowerNoiseAtom {
  std::uint64_t seed = 0;
  Rational epsilon;
  double exponent = 0.0;
};

using Atom = std::variant<LinearAtom, CubicAtom, EvenAtom, BoundedNoiseAtom, PowerNoiseAtom>;

/// Snap spacing of noise inputs: coordinates are rounded to multiples of
/// 2^-kNoiseQuantumBits before hashing.
inline constexpr int kNoiseQuantumBits = 40;
/// Noise coordinates before scaling are k / 2^kNoiseLevelBits in [-1, 1).
inline constexpr int kNoiseLevelBits = 20;

/// Seeded perturbation of codomain dimension m. Depends only on
/// (seed, quantized x, |x|) and satisfies |out| <= epsilon * |x|^exponent
/// (exponent 0 means bounded by epsilon; at x = 0 with exponent > 0 the
/// output is 0). Float mode returns the exact value truncated toward zero.
Point noise_eval(std::uint64_t seed, const Point& x, const Rational& epsilon, double exponent,
                 std::size_t codomain_dim);

/// f: R^d -> R^m as a sum of atoms. Immutable after construction.
class FuncModel {
 public:
  FuncModel(std::size_t domain_dim, std::size_t codomain_dim, std::vector<Atom> atoms);

  std::size_t domain_dim() const noexcept { return domain_dim_; }
  std::size_t codomain_dim() const noexcept { return codomain_dim_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  bool has_noise() const;

  /// Evaluates in the scalar mode of x.
  Point operator()(const Point& x) const;
  /// As operator(), but rejects x whose mode differs from `mode`.
  Point evaluate(const Point& x, ScalarMode mode) const;

  /// Same domain/codomain; atoms concatenated.
  FuncModel plus(const FuncModel& other) const;

 private:
  struct Compiled;

  std::size_t domain_dim_;
  std::size_t codomain_dim_;
  std::vector<Atom> atoms_;
  std::shared_ptr<const Compiled> compiled_;
};

/// Type-erased map R^d -> R^m; used for models and for functions derived
/// from them (odd part, transforms, recovered limits).
class Evaluable {
 public:
  using Fn = std::function<Point(const Point&)>;

  Evaluable(std::size_t domain_dim, std::size_t codomain_dim, Fn fn);
  Evaluable(const FuncModel& model);  // NOLINT(google-explicit-constructor)

  std::size_t domain_dim() const noexcept { return domain_dim_; }
  std::size_t codomain_dim() const noexcept { return codomain_dim_; }

  Point operator()(const Point& x) const;

 private:
  std::size_t domain_dim_;
  std::size_t codomain_dim_;
  Fn fn_;
};

/// x -> (f(x) - f(-x)) / 2.
Evaluable odd_part(const Evaluable& f);

/// x -> alpha f(x) + beta g(x).
Evaluable linear_combination(const Scalar& alpha, const Evaluable& f, const Scalar& beta,
                             const Evaluable& g);

// Catalogue of exact solutions and probes.
FuncModel linear_model(Matrix matrix);
FuncModel cubic_model(std::size_t domain_dim, std::vector<Tensor3> tensors);
FuncModel even_model(std::size_t domain_dim, std::vector<Matrix> forms);
/// 1-D f(x) = a x + c x^3.
FuncModel scalar_additive_cubic(const Rational& a, const Rational& c);

}  // namespace acstab
