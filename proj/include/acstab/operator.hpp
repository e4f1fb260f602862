#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "acstab/model.hpp"
#include "acstab/point.hpp"

namespace acstab {

/// One term c * f(a x + b y) of a linear relation among values of f.
struct RelationTerm {
  Rational coefficient;
  std::int64_t x_coeff = 0;
  std::int64_t y_coeff = 0;
};

struct ResidualVector {
  Point value;
  double magnitude = 0.0;  // |value| under the active norm
  /// sum |c_i| |f(a_i x + b_i y)|; the natural scale for relative checks.
  double scale = 0.0;

  bool is_exact_zero() const { return value.is_zero(); }
  double relative() const { return magnitude / std::max(1.0, scale); }
};

/// Evaluates sum_i c_i f(a_i x + b_i y) in the scalar mode of x and y.
ResidualVector relation_residual(const Evaluable& f, std::span<const RelationTerm> terms,
                                 const Point& x, const Point& y);

// The relations below are stored moved-to-one-side (LHS - RHS).
std::span<const RelationTerm> difference_operator_terms();
std::span<const RelationTerm> additive_lemma_terms();
std::span<const RelationTerm> cubic_lemma_terms();

/// D_f(x,y) = 3f(x+3y) - f(3x+y) - 12[f(x+y) + f(x-y)] + 16[f(x) + f(y)]
///            - 12 f(2y) + 4 f(2x). Vanishes identically exactly on solutions.
ResidualVector d_residual(const Evaluable& f, const Point& x, const Point& y);

/// 3f(x+3y) - f(3x+y) - 12[f(x+y) + f(x-y)] + 24 f(x) - 8 f(y); zero iff f additive.
ResidualVector additive_lemma_residual(const Evaluable& f, const Point& x, const Point& y);

/// 3f(x+3y) - f(3x+y) - 12[f(x+y) + f(x-y)] + 48 f(x) - 80 f(y); zero for cubic f.
ResidualVector cubic_lemma_residual(const Evaluable& f, const Point& x, const Point& y);

/// f(4x) - 10 f(2x) + 16 f(x), which equals D_f(x, x) / 2 for odd f.
ResidualVector double_arg_residual(const Evaluable& f, const Point& x);

/// D_{alpha f + beta g}(x,y) - alpha D_f(x,y) - beta D_g(x,y).
ResidualVector d_linearity_check(const Evaluable& f, const Evaluable& g, const Scalar& alpha,
                                 const Scalar& beta, const Point& x, const Point& y);

}  // namespace acstab
