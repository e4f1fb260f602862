#include "acstab/operator.hpp"

#include <cmath>

#include "acstab/errors.hpp"

namespace acstab {

namespace {

std::vector<RelationTerm> make_terms(std::initializer_list<std::array<long, 3>> rows) {
  std::vector<RelationTerm> out;
  for (const auto& r : rows) out.push_back({Rational(r[0]), r[1], r[2]});
  return out;
}

}  // namespace

ResidualVector relation_residual(const Evaluable& f, std::span<const RelationTerm> terms,
                                 const Point& x, const Point& y) {
  if (x.dim() != f.domain_dim() || y.dim() != f.domain_dim())
    fail(ErrorCode::dimension_mismatch, "relation arguments do not match the function's domain");
  if (x.mode() != y.mode()) fail(ErrorCode::mode_mismatch, "x and y are in different scalar modes");
  const ScalarMode mode = x.mode();

  Point total = Point::zeros(f.codomain_dim(), mode, x.norm_kind());
  double scale = 0.0;
  for (const auto& t : terms) {
    const Point value = f(Point::combine(t.x_coeff, x, t.y_coeff, y));
    const Scalar c = Scalar::from_rational(t.coefficient, mode);
    total += value.scaled(c);
    scale += std::fabs(t.coefficient.get_d()) * value.norm();
  }
  const double magnitude = total.norm();
  return ResidualVector{std::move(total), magnitude, scale};
}

std::span<const RelationTerm> difference_operator_terms() {
  static const auto terms = make_terms({
      {3, 1, 3}, {-1, 3, 1}, {-12, 1, 1}, {-12, 1, -1}, {16, 1, 0}, {16, 0, 1}, {-12, 0, 2}, {4, 2, 0},
  });
  return terms;
}

std::span<const RelationTerm> additive_lemma_terms() {
  static const auto terms = make_terms({
      {3, 1, 3}, {-1, 3, 1}, {-12, 1, 1}, {-12, 1, -1}, {24, 1, 0}, {-8, 0, 1},
  });
  return terms;
}

std::span<const RelationTerm> cubic_lemma_terms() {
  static const auto terms = make_terms({
      {3, 1, 3}, {-1, 3, 1}, {-12, 1, 1}, {-12, 1, -1}, {48, 1, 0}, {-80, 0, 1},
  });
  return terms;
}

ResidualVector d_residual(const Evaluable& f, const Point& x, const Point& y) {
  return relation_residual(f, difference_operator_terms(), x, y);
}

ResidualVector additive_lemma_residual(const Evaluable& f, const Point& x, const Point& y) {
  return relation_residual(f, additive_lemma_terms(), x, y);
}

ResidualVector cubic_lemma_residual(const Evaluable& f, const Point& x, const Point& y) {
  return relation_residual(f, cubic_lemma_terms(), x, y);
}

ResidualVector double_arg_residual(const Evaluable& f, const Point& x) {
  static const auto terms = make_terms({{1, 4, 0}, {-10, 2, 0}, {16, 1, 0}});
  return relation_residual(f, terms, x, x);
}

ResidualVector d_linearity_check(const Evaluable& f, const Evaluable& g, const Scalar& alpha,
                                 const Scalar& beta, const Point& x, const Point& y) {
  const Evaluable combined = linear_combination(alpha, f, beta, g);
  Point value = d_residual(combined, x, y).value;
  value -= d_residual(f, x, y).value.scaled(alpha);
  value -= d_residual(g, x, y).value.scaled(beta);
  const double magnitude = value.norm();
  return ResidualVector{std::move(value), magnitude, 0.0};
}

}  // namespace acstab
