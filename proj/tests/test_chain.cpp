#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "acstab/chain.hpp"
#include "acstab/errors.hpp"
#include "acstab/sampling.hpp"
#include "support.hpp"

using namespace acstab;
using support::exact;
using support::exact1;
using support::scalar_fn;
using support::value1;

TEST_CASE("catalogue lists the derivation steps in order", "[chain]") {
  const std::vector<std::string> expected{"2.5",  "2.8",  "2.9",  "2.10", "2.11", "2.12", "2.13",
                                          "2.14", "2.15", "2.16", "2.17", "2.18", "2.19", "2.20",
                                          "2.21", "2.22", "2.23", "2.24", "2.25", "2.26", "2.27"};
  const auto& cat = chain_catalogue();
  REQUIRE(cat.size() == expected.size());
  for (std::size_t i = 0; i < cat.size(); ++i) CHECK(cat[i].id == expected[i]);
}

TEST_CASE("fractional identity keeps its printed coefficients", "[chain]") {
  const auto& cat = chain_catalogue();
  const auto it = std::find_if(cat.begin(), cat.end(), [](const ChainIdentity& c) { return c.id == "2.19"; });
  REQUIRE(it != cat.end());
  std::set<Rational> coeffs;
  for (const auto& t : it->rhs) coeffs.insert(t.coefficient);
  CHECK(coeffs == std::set<Rational>{Rational(-79, 28), Rational(-73, 28), Rational(3, 14), Rational(66, 7)});
  const auto r = chain_replay(scalar_fn([](const Rational& x) -> Rational { return x; }), exact({"1"}), exact({"2"}));
  CHECK(std::all_of(r.begin(), r.end(), [](const ChainResidual& c) { return c.residual.is_exact_zero(); }));
}

TEST_CASE("table replay matches the transcribed identities on arbitrary functions", "[chain]") {
  // Any function works here: both sides compute LHS - RHS of the same
  // printed equations, one from the data table, one typed in by hand.
  const std::vector<oracle::Fn> fns{
      [](const Rational& x) -> Rational { return x * x; },
      [](const Rational& x) -> Rational { return x * x * x - x / 3; },
      [](const Rational& x) -> Rational { return x * x * x * x / 5 + 7 * x * x; },
  };
  Sampler s(5);
  for (const auto& f : fns) {
    for (int i = 0; i < 20; ++i) {
      const Rational x = s.dyadic(-8, 8, 10), y = s.dyadic(-8, 8, 10);
      const auto expected = oracle::chain(f, x, y);
      for (const auto& r : chain_replay(scalar_fn(f), exact1(x), exact1(y))) {
        INFO("identity " << r.id);
        CHECK(value1(r.residual.value) == expected.at(r.id));
      }
    }
  }
}

TEST_CASE("additive functions satisfy every catalogued identity", "[chain][property]") {
  Sampler s(6);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 1 + s.below(3), m = 1 + s.below(3);
    const FuncModel f = s.random_linear(d, m);
    const Point x = s.point(d, ScalarMode::exact, NormKind::euclidean, -8, 8, 10);
    const Point y = s.point(d, ScalarMode::exact, NormKind::euclidean, -8, 8, 10);
    for (const auto& r : chain_replay(f, x, y)) {
      INFO("identity " << r.id);
      CHECK(r.residual.is_exact_zero());
    }
  }
}

TEST_CASE("cube at (1, 1) on the third-argument identity", "[chain]") {
  const auto r = chain_replay(scalar_fn([](const Rational& x) -> Rational { return x * x * x; }), exact({"1"}), exact({"1"}));
  const auto it = std::find_if(r.begin(), r.end(), [](const ChainResidual& c) { return c.id == "2.25"; });
  REQUIRE(it != r.end());
  CHECK(value1(it->residual.value) == -24);
}

TEST_CASE("the square violates many identities", "[chain]") {
  const auto r = chain_replay(scalar_fn([](const Rational& x) -> Rational { return x * x; }), exact({"1"}), exact({"2"}));
  const auto nonzero = std::count_if(r.begin(), r.end(), [](const ChainResidual& c) { return !c.residual.is_exact_zero(); });
  CHECK(nonzero >= 5);
}

TEST_CASE("replay refuses float mode", "[chain]") {
  const FuncModel f = linear_model({{Rational(1)}});
  try {
    chain_replay(f, support::floating({1.0}), support::floating({2.0}));
    FAIL("expected mode_mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::mode_mismatch);
  }
}

TEST_CASE("moved-to-one-side form negates the right-hand side", "[chain]") {
  const auto& c = chain_catalogue().front();
  const auto terms = c.moved_to_one_side();
  REQUIRE(terms.size() == c.lhs.size() + c.rhs.size());
  CHECK(terms[c.lhs.size()].coefficient == -c.rhs.front().coefficient);
}
