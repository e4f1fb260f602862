#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "acstab/bounds.hpp"
#include "acstab/errors.hpp"
#include "acstab/operator.hpp"
#include "acstab/sampling.hpp"
#include "support.hpp"

using namespace acstab;
using Catch::Approx;

namespace {

std::function<long double(long double)> diagonal(const ControlFunction& phi) {
  return std::visit(
      [](const auto& v) -> std::function<long double(long double)> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ConstantPhi>) {
          return [c = v.c](long double) { return static_cast<long double>(c); };
        } else if constexpr (std::is_same_v<T, SumOfPowersPhi>) {
          return [v](long double z) { return 2.0L * v.theta * (v.p == 0 ? 1.0L : std::pow(z, (long double)v.p)); };
        } else {
          const double e = v.r + v.s;
          return [v, e](long double z) { return v.theta * (e == 0 ? 1.0L : std::pow(z, (long double)e)); };
        }
      },
      phi.variant());
}

long double brute_component(Component c, const ControlFunction& phi, double norm, Direction l) {
  const int first = l.value() == -1 ? 1 : 0;
  return oracle::brute_series(diagonal(phi), norm, component_weight(c), l.value(), first, 0.5L);
}

std::vector<ControlFunction> sample_phis() {
  std::vector<ControlFunction> out{ConstantPhi{0.076}};
  for (double p : {0.0, 0.5, 2.0, 2.5, 4.0, 5.0}) {
    out.push_back(SumOfPowersPhi{1.0, p});
    out.push_back(SumOfPowersPhi{0.25, p});
  }
  for (auto [r, s] : {std::pair{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}, {0.5, 0.25}, {3.0, 1.5}})
    out.push_back(ProductOfPowersPhi{1.0, r, s});
  return out;
}

}  // namespace

TEST_CASE("component series match a term-by-term sum", "[bounds]") {
  for (const auto& phi : sample_phis()) {
    for (Component c : {Component::additive, Component::cubic}) {
      const Direction l = auto_direction(phi, c);
      for (double norm : {0.5, 1.0, 3.0}) {
        const SeriesKind kind = c == Component::additive ? SeriesKind::additive : SeriesKind::cubic;
        const SeriesResult r = series_bound(kind, phi, norm, l);
        const long double expected = brute_component(c, phi, norm, l);
        INFO(to_string(c) << " exponent " << phi.scaling_exponent() << " norm " << norm << " l " << l.value());
        REQUIRE(r.status == SeriesStatus::converged);
        CHECK(r.upper() == Approx(static_cast<double>(expected)).epsilon(1e-9));
        CHECK(r.partial_sum <= static_cast<double>(expected) * (1 + 1e-12));
        CHECK(r.upper() >= static_cast<double>(expected) * (1 - 1e-12));
      }
    }
  }
}

TEST_CASE("constant control gives the closed-form component bounds", "[bounds]") {
  const ControlFunction phi = ConstantPhi{76e-3};
  CHECK(series_bound(SeriesKind::additive, phi, 1.0, Direction::growing()).upper() == Approx(38e-3).epsilon(1e-12));
  CHECK(series_bound(SeriesKind::cubic, phi, 1.0, Direction::growing()).upper() == Approx(76e-3 / 14).epsilon(1e-12));
  CHECK(combined_series_bound(phi, 1.0, Direction::growing(), Direction::growing()).upper() ==
        Approx(152e-3 / 21).epsilon(1e-12));
  CHECK(series_bound(SeriesKind::additive, phi, 1.0, Direction::shrinking()).status == SeriesStatus::diverged);
}

TEST_CASE("combined series splits into the weighted components", "[bounds]") {
  const ControlFunction phi = SumOfPowersPhi{1.0, 2.0};
  const Direction la = auto_direction(phi, Component::additive), lc = auto_direction(phi, Component::cubic);
  CHECK(la == Direction::shrinking());
  CHECK(lc == Direction::growing());
  const double a = series_bound(SeriesKind::additive, phi, 2.0, la).upper();
  const double c = series_bound(SeriesKind::cubic, phi, 2.0, lc).upper();
  CHECK(combined_series_bound(phi, 2.0, la, lc).upper() == Approx((a + c) / 6).epsilon(1e-12));
}

TEST_CASE("corollary closed forms", "[bounds]") {
  CHECK(corollary_sum_bound(1, 0, 1) == Approx(4.0 / 21).epsilon(1e-15));
  CHECK(corollary_sum_bound(1, 2, 1) == Approx(1.0 / 8).epsilon(1e-15));
  CHECK(corollary_sum_bound(1, 4, 1) == Approx(11.0 / 336).epsilon(1e-15));
  CHECK(corollary_sum_bound(2, 2, 3) == Approx(2 * 9.0 / 8).epsilon(1e-15));
  CHECK(corollary_product_bound(1, 1, 1, 1) == Approx(1.0 / 16).epsilon(1e-15));
  CHECK(corollary_product_bound(1, 0, 0, 1) == Approx(2.0 / 21).epsilon(1e-15));
  for (double p : {0.0, 0.5, 2.0, 2.5, 4.0, 5.0})
    CHECK(corollary_sum_bound(1.5, p, 1.7) == Approx(static_cast<double>(oracle::corollary_sum(1.5, p, 1.7))).epsilon(1e-12));
}

TEST_CASE("corollary rejects the excluded exponents", "[bounds]") {
  for (double p : {1.0, 3.0}) {
    try {
      corollary_sum_bound(1, p, 1);
      FAIL("expected excluded_exponent");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::excluded_exponent);
    }
  }
  CHECK_THROWS_AS(corollary_product_bound(1, 0.5, 0.5, 1), Error);
  CHECK_THROWS_AS(corollary_product_bound(1, 2, 1, 1), Error);
}

TEST_CASE("bounds grow with theta and, for positive exponents, with the norm", "[bounds][property]") {
  for (double p : {0.5, 2.0, 4.0}) {
    double prev_theta = 0.0, prev_norm = 0.0;
    for (double t : {0.1, 0.5, 1.0, 4.0}) {
      const double b = corollary_sum_bound(t, p, 1.0);
      CHECK(b > prev_theta);
      prev_theta = b;
    }
    for (double n : {0.1, 0.5, 1.0, 4.0}) {
      const double b = corollary_sum_bound(1.0, p, n);
      CHECK(b > prev_norm);
      prev_norm = b;
    }
  }
}

TEST_CASE("truncated series agree with the corollary constants", "[bounds]") {
  for (double p : {0.0, 0.5, 2.0, 2.5, 4.0, 5.0}) {
    const auto r = consistency_check(1.0, p, 1.0, 1e-9);
    INFO("p = " << p);
    CHECK(r.passed);
    CHECK(r.difference <= 1e-9);
    CHECK(r.closed_form == Approx(static_cast<double>(oracle::corollary_sum(1, p, 1))).epsilon(1e-14));
  }
  for (auto [r, s] : {std::pair{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}}) {
    const auto rep = consistency_check_product(1.0, r, s, 1.0, 1e-9);
    CHECK(rep.passed);
    CHECK(rep.closed_form == Approx(static_cast<double>(oracle::corollary_sum(1, r + s, 1)) / 2).epsilon(1e-14));
  }
}

TEST_CASE("excluded exponents diverge in both directions", "[bounds]") {
  for (int l : {1, -1}) {
    CHECK(series_bound(SeriesKind::additive, SumOfPowersPhi{1, 1}, 1.0, Direction(l)).status ==
          SeriesStatus::diverged);
    CHECK(series_bound(SeriesKind::cubic, SumOfPowersPhi{1, 3}, 1.0, Direction(l)).status == SeriesStatus::diverged);
    CHECK_FALSE(is_admissible(Component::additive, SumOfPowersPhi{1, 1}, Direction(l)));
    CHECK_FALSE(is_admissible(Component::cubic, ProductOfPowersPhi{1, 2, 1}, Direction(l)));
  }
}

TEST_CASE("exponents next to the exclusions still give certified enclosures", "[bounds]") {
  for (double p : {1 - 1e-6, 1 + 1e-6}) {
    const ControlFunction phi = SumOfPowersPhi{1.0, p};
    const Direction l = auto_direction(phi, Component::additive);
    const auto r = series_bound(SeriesKind::additive, phi, 1.0, l);
    INFO("p = " << p);
    CHECK(r.status != SeriesStatus::diverged);
    CHECK(std::isfinite(r.upper()));
    CHECK(r.partial_sum <= r.upper());
    // sum_i 2^{il} 2 (2^{-l(i+l)})^p is geometric with ratio 2^{l(1-p)}.
    const double ratio = std::pow(2.0, l.value() * (1 - p));
    const double first = l.value() == -1 ? 0.5 : std::pow(2.0, -p);
    const double exact = first / (1 - ratio);
    CHECK(r.partial_sum <= exact * (1 + 1e-9));
    CHECK(r.upper() >= exact * (1 - 1e-9));
  }
}

TEST_CASE("uniqueness tail drops the leading terms", "[bounds]") {
  const ControlFunction phi = ConstantPhi{1.0};
  CHECK(uniqueness_tail(Component::additive, phi, 1.0, Direction::growing(), 0).upper() == Approx(1.0));
  CHECK(uniqueness_tail(Component::additive, phi, 1.0, Direction::growing(), 20).upper() ==
        Approx(std::ldexp(1.0, -20)).epsilon(1e-12));
  CHECK(uniqueness_tail(Component::cubic, phi, 1.0, Direction::growing(), 20).upper() ==
        Approx(std::pow(8.0, -20) / 7).epsilon(1e-12));
  const ControlFunction quad = SumOfPowersPhi{1.0, 2.0};
  double prev = std::numeric_limits<double>::infinity();
  for (int n = 0; n < 10; ++n) {
    const double t = uniqueness_tail(Component::additive, quad, 1.0, Direction::shrinking(), n).upper();
    CHECK(t < prev);
    prev = t;
  }
}

TEST_CASE("certified envelopes for noise atoms", "[bounds]") {
  const FuncModel bounded = scalar_additive_cubic(2, 1).plus(FuncModel(1, 1, {BoundedNoiseAtom{1, Rational(1, 1000)}}));
  const auto c = std::get<ConstantPhi>(certify_phi(bounded).variant());
  CHECK(c.c == Approx(0.076).epsilon(1e-15));

  const FuncModel power = FuncModel(1, 1, {PowerNoiseAtom{1, Rational(1, 100), 2.0}});
  const auto s = std::get<SumOfPowersPhi>(certify_phi(power).variant());
  CHECK(s.p == 2.0);
  CHECK(s.theta == Approx(76 * 16 * 0.01).epsilon(1e-15));

  CHECK(std::get<ConstantPhi>(certify_phi(scalar_additive_cubic(1, 1)).variant()).c == 0.0);
  try {
    certify_phi(even_model(1, std::vector<Matrix>{Matrix{{Rational(1)}}}));
    FAIL("expected no_certified_envelope");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_certified_envelope);
  }
  CHECK_THROWS_AS(certify_phi(FuncModel(1, 1, {PowerNoiseAtom{1, Rational(1), 2.0}, PowerNoiseAtom{2, Rational(1), 1.5}})),
                  Error);
}

TEST_CASE("certified envelopes dominate sampled residuals", "[bounds][property]") {
  Sampler s(314);
  const std::vector<FuncModel> models{
      s.random_linear(2, 2).plus(FuncModel(2, 2, {BoundedNoiseAtom{3, Rational(1, 1000)}})),
      s.random_cubic(2, 2).plus(FuncModel(2, 2, {PowerNoiseAtom{4, Rational(1, 100), 2.0}})),
      s.random_linear(2, 2).plus(FuncModel(2, 2, {PowerNoiseAtom{5, Rational(1, 100), 0.5}})),
  };
  for (const auto& f : models) {
    const ControlFunction phi = certify_phi(f);
    for (int i = 0; i < 10000 / static_cast<int>(models.size()); ++i) {
      const Point x = s.point(2, ScalarMode::exact, NormKind::euclidean, -8, 8, 10);
      const Point y = s.point(2, ScalarMode::exact, NormKind::euclidean, -8, 8, 10);
      CHECK(d_residual(f, x, y).magnitude <= phi(x, y));
    }
  }
}
