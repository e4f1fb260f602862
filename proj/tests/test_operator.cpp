#include <catch2/catch_amalgamated.hpp>

#include "acstab/errors.hpp"
#include "acstab/operator.hpp"
#include "acstab/sampling.hpp"
#include "support.hpp"

using namespace acstab;
using support::exact;
using support::exact1;
using support::scalar_fn;
using support::value1;

namespace {

Rational id(const Rational& x) { return x; }
Rational five(const Rational& x) { return 5 * x; }
Rational square(const Rational& x) { return x * x; }
Rational cube(const Rational& x) { return x * x * x; }
Rational twice_cube(const Rational& x) { return 2 * x * x * x; }

}  // namespace

TEST_CASE("difference operator examples", "[operator]") {
  CHECK(value1(d_residual(scalar_fn(id), exact({"1"}), exact({"2"})).value) == 0);
  CHECK(value1(d_residual(scalar_fn(cube), exact({"1"}), exact({"2"})).value) == 0);
  CHECK(oracle::D(square, 1, 1) == -16);
  const auto r = d_residual(scalar_fn(square), exact({"1"}), exact({"1"}));
  CHECK(value1(r.value) == -16);
  CHECK(r.magnitude == 16.0);
}

TEST_CASE("additive relation examples", "[operator]") {
  CHECK(value1(additive_lemma_residual(scalar_fn(five), exact({"1"}), exact({"2"})).value) == 0);
  CHECK(oracle::additive_relation(cube, 1, 1) == 48);
  CHECK(value1(additive_lemma_residual(scalar_fn(cube), exact({"1"}), exact({"1"})).value) == 48);
  CHECK(value1(additive_lemma_residual(scalar_fn(id), exact({"-3"}), exact({"7"})).value) == 0);
}

TEST_CASE("cubic relation examples", "[operator]") {
  CHECK(value1(cubic_lemma_residual(scalar_fn(cube), exact({"1"}), exact({"2"})).value) == 0);
  CHECK(oracle::cubic_relation(id, 1, 1) == -48);
  CHECK(value1(cubic_lemma_residual(scalar_fn(id), exact({"1"}), exact({"1"})).value) == -48);
  CHECK(value1(cubic_lemma_residual(scalar_fn(twice_cube), exact({"-1"}), exact({"3"})).value) == 0);
}

TEST_CASE("double argument relation examples", "[operator]") {
  CHECK(value1(double_arg_residual(scalar_fn(id), exact({"1"})).value) == 0);
  CHECK(value1(double_arg_residual(scalar_fn(cube), exact({"1"})).value) == 0);
  CHECK(oracle::double_arg(square, 1) == -8);
  CHECK(value1(double_arg_residual(scalar_fn(square), exact({"1"})).value) == -8);
}

TEST_CASE("relations agree with the term-by-term oracle on arbitrary functions", "[operator]") {
  // A non-solution with mixed even/odd content and nontrivial rational values.
  const oracle::Fn f = [](const Rational& x) -> Rational { return x * x * x * x / 7 - 3 * x * x + x / 5 + 2 * x * x * x; };
  const auto g = scalar_fn(f);
  Sampler s(31);
  for (int i = 0; i < 100; ++i) {
    const Rational x = s.dyadic(-8, 8, 10), y = s.dyadic(-8, 8, 10);
    CHECK(value1(d_residual(g, exact1(x), exact1(y)).value) == oracle::D(f, x, y));
    CHECK(value1(additive_lemma_residual(g, exact1(x), exact1(y)).value) == oracle::additive_relation(f, x, y));
    CHECK(value1(cubic_lemma_residual(g, exact1(x), exact1(y)).value) == oracle::cubic_relation(f, x, y));
    CHECK(value1(double_arg_residual(g, exact1(x)).value) == oracle::double_arg(f, x));
  }
}

TEST_CASE("solutions lie in the kernels of the relations", "[operator][property]") {
  Sampler s(77);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 1 + s.below(3), m = 1 + s.below(3);
    const FuncModel lin = s.random_linear(d, m);
    const FuncModel cub = s.random_cubic(d, m);
    for (int k = 0; k < 5; ++k) {
      const Point x = s.point(d, ScalarMode::exact, NormKind::euclidean, -8, 8, 10);
      const Point y = s.point(d, ScalarMode::exact, NormKind::euclidean, -8, 8, 10);
      CHECK(d_residual(lin, x, y).is_exact_zero());
      CHECK(additive_lemma_residual(lin, x, y).is_exact_zero());
      CHECK(d_residual(cub, x, y).is_exact_zero());
      CHECK(cubic_lemma_residual(cub, x, y).is_exact_zero());
      CHECK(d_residual(lin.plus(cub), x, y).is_exact_zero());
    }
  }
}

TEST_CASE("D on the diagonal is twice the double argument relation for odd f", "[operator][property]") {
  Sampler s(78);
  const oracle::Fn odd = [](const Rational& x) -> Rational { return x * x * x * x * x - 4 * x * x * x / 3 + x; };
  const auto g = scalar_fn(odd);
  for (int i = 0; i < 50; ++i) {
    const Point x = exact1(s.dyadic(-8, 8, 10));
    CHECK(d_residual(g, x, x).value == double_arg_residual(g, x).value.scaled(2));
  }
  const FuncModel noisy = s.random_cubic(2, 2).plus(FuncModel(2, 2, {BoundedNoiseAtom{4, Rational(1, 100)}}));
  const Evaluable odd_noisy = odd_part(noisy);
  for (int i = 0; i < 50; ++i) {
    const Point x = s.point(2, ScalarMode::exact, NormKind::euclidean, -8, 8, 10);
    CHECK(d_residual(odd_noisy, x, x).value == double_arg_residual(odd_noisy, x).value.scaled(2));
  }
}

TEST_CASE("D is linear in f", "[operator][property]") {
  Sampler s(79);
  const auto sq = scalar_fn(square);
  CHECK(value1(d_linearity_check(sq, sq, Scalar(Rational(1)), Scalar(Rational(1)), exact({"1"}), exact({"1"})).value) ==
        0);
  CHECK(d_linearity_check(scalar_fn(id), scalar_fn(cube), Scalar(Rational(2)), Scalar(Rational(-1)), exact({"1"}),
                          exact({"2"}))
            .is_exact_zero());
  for (int i = 0; i < 50; ++i) {
    const FuncModel f = s.random_even(2, 2).plus(FuncModel(2, 2, {BoundedNoiseAtom{s.below(100), Rational(1, 10)}}));
    const FuncModel g = s.random_cubic(2, 2);
    const Scalar a(s.coefficient()), b(s.coefficient());
    const Point x = s.point(2, ScalarMode::exact, NormKind::max, -8, 8, 10);
    const Point y = s.point(2, ScalarMode::exact, NormKind::max, -8, 8, 10);
    CHECK(d_linearity_check(f, g, a, b, x, y).is_exact_zero());
    CHECK(d_linearity_check(f, g, Scalar(Rational(0)), Scalar(Rational(0)), x, y).is_exact_zero());
  }
}

TEST_CASE("float residuals of solutions are small relative to their scale", "[operator]") {
  Sampler s(80);
  for (int i = 0; i < 50; ++i) {
    const FuncModel f = s.random_linear(3, 2).plus(s.random_cubic(3, 2));
    const Point x = s.point(3, ScalarMode::floating, NormKind::euclidean, -8, 8, 10);
    const Point y = s.point(3, ScalarMode::floating, NormKind::euclidean, -8, 8, 10);
    CHECK(d_residual(f, x, y).relative() <= 1e-9);
  }
}

TEST_CASE("relations reject mismatched dimensions", "[operator]") {
  const FuncModel f = linear_model({{Rational(1), Rational(2)}});
  CHECK_THROWS_AS(d_residual(f, exact({"1"}), exact({"1"})), Error);
  CHECK_THROWS_AS(d_residual(f, exact({"1", "2"}), exact({"1"})), Error);
}
