#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "acstab/errors.hpp"
#include "acstab/harness.hpp"
#include "support.hpp"

using namespace acstab;
namespace fs = std::filesystem;

namespace {

std::string config(const std::string& name) { return support::slurp(fs::path(ACSTAB_CONFIG_DIR) / (name + ".json")); }

Json read_json(const fs::path& p) { return Json::parse(support::slurp(p)); }

}  // namespace

TEST_CASE("subcommand names", "[harness]") {
  for (auto s : {Subcommand::check_lemmas, Subcommand::replay_chain, Subcommand::recover, Subcommand::bounds,
                 Subcommand::sweep})
    CHECK(parse_subcommand(to_string(s)) == s);
  CHECK(to_string(Subcommand::check_lemmas) == "check-lemmas");
  CHECK_THROWS_AS(parse_subcommand("prove"), Error);
}

TEST_CASE("error codes map onto process exit codes", "[harness]") {
  CHECK(exit_code_for(ErrorCode::divergent_series) == exit_code::divergent);
  CHECK(exit_code_for(ErrorCode::overflow_guard) == exit_code::overflow);
  CHECK(exit_code_for(ErrorCode::parse_error) == exit_code::config_error);
  CHECK(exit_code_for(ErrorCode::excluded_exponent) == exit_code::config_error);
}

TEST_CASE("config parsing fills defaults and rejects bad input", "[harness]") {
  const auto cfg = parse_config(Json::parse(config("recover_exact")));
  CHECK(cfg.d == 1);
  CHECK(cfg.mode == ScalarMode::exact);
  CHECK(cfg.points.size() == 5);
  CHECK(cfg.model.has_value());
  CHECK_FALSE(cfg.direction_additive.has_value());

  Json j = Json::parse(config("recover_exact"));
  j["schema_version"] = 2;
  CHECK_THROWS_AS(parse_config(j), Error);
  j = Json::parse(config("recover_exact"));
  j["mode"] = "interval";
  CHECK_THROWS_AS(parse_config(j), Error);
  j = Json::parse(config("recover_exact"));
  j["directions"] = 0;
  CHECK_THROWS_AS(parse_config(j), Error);
}

TEST_CASE("seeded samples are reproducible and explicit points come first", "[harness]") {
  const Json spec = Json::parse(R"({"points": ["7/2"], "random": {"count": 5, "seed": 9}})");
  const auto a = sample_points(spec, 1, ScalarMode::exact, NormKind::euclidean);
  const auto b = sample_points(spec, 1, ScalarMode::exact, NormKind::euclidean);
  REQUIRE(a.size() == 6);
  CHECK(a == b);
  CHECK(support::value1(a.front()) == Rational(7, 2));
  const auto pairs = sample_pairs(Json::parse(R"({"random": {"count": 4, "seed": 1}})"), 2, ScalarMode::exact,
                                  NormKind::max);
  CHECK(pairs.size() == 4);
}

TEST_CASE("recover writes JSON and CSV reports", "[harness]") {
  const auto dir = support::scratch("recover");
  const auto r = run(Subcommand::recover, config("recover_exact"), dir.string());
  CHECK(r.exit_code == exit_code::ok);
  REQUIRE(r.files.size() == 2);
  const Json rep = read_json(dir / "recover.json");
  CHECK(rep.at("passed") == true);
  CHECK(rep.at("points").size() == 5);
  CHECK(rep.at("points").at(0).at("additive_exact") == Json::array({"2"}));
  CHECK(fs::exists(dir / "recover.csv"));
}

TEST_CASE("divergent control functions produce an error report and exit 3", "[harness]") {
  const auto dir = support::scratch("divergent");
  const auto r = run(Subcommand::recover, config("recover_divergent"), dir.string());
  CHECK(r.exit_code == exit_code::divergent);
  const Json rep = read_json(dir / "recover.json");
  CHECK(rep.at("status") == "error");
  CHECK(rep.at("passed") == false);
}

TEST_CASE("malformed configs exit 2 without writing", "[harness]") {
  const auto dir = support::scratch("malformed");
  CHECK(run(Subcommand::recover, "{not json", dir.string()).exit_code == exit_code::config_error);
  CHECK(run(Subcommand::bounds, R"({"schema_version": 1, "dimensions": {"d": 0, "m": 1}})", dir.string()).exit_code ==
        exit_code::config_error);
  CHECK(fs::is_empty(dir));
}

TEST_CASE("check-lemmas reports the square's residuals", "[harness]") {
  const auto dir = support::scratch("lemmas");
  const auto r = run(Subcommand::check_lemmas, config("check_lemmas_square"), dir.string());
  CHECK(r.exit_code == exit_code::ok);
  const Json rep = read_json(dir / "check_lemmas.json");
  const Json& sample = rep.at("families").at(0).at("samples").at(0);
  CHECK(sample.at("difference_operator").at("value") == Json::array({"-16"}));
  CHECK(rep.at("families").at(0).at("chain").at("nonzero_identities").size() >= 5);

  const auto dir2 = support::scratch("lemmas_default");
  CHECK(run(Subcommand::check_lemmas, config("check_lemmas"), dir2.string()).exit_code == exit_code::ok);
}

TEST_CASE("a family expected to vanish fails on a non-solution", "[harness]") {
  Json j = Json::parse(config("check_lemmas_square"));
  j["check_lemmas"]["families"][0]["expect"] = "solution";
  const auto dir = support::scratch("lemmas_fail");
  CHECK(run(Subcommand::check_lemmas, j.dump(), dir.string()).exit_code == exit_code::check_failed);
}

TEST_CASE("replay-chain is clean for linear models and refuses float mode", "[harness]") {
  const auto dir = support::scratch("replay");
  CHECK(run(Subcommand::replay_chain, config("replay_chain"), dir.string()).exit_code == exit_code::ok);
  CHECK(fs::exists(dir / "chain_catalogue.json"));
  const Json rep = read_json(dir / "chain_replay.json");
  CHECK(rep.at("passed") == true);

  Json j = Json::parse(config("replay_chain"));
  j["mode"] = "float";
  CHECK(run(Subcommand::replay_chain, j.dump(), support::scratch("replay_float").string()).exit_code ==
        exit_code::config_error);
}

TEST_CASE("bounds and sweep subcommands", "[harness]") {
  const auto dir = support::scratch("bounds");
  CHECK(run(Subcommand::bounds, config("bounds"), dir.string()).exit_code == exit_code::ok);
  CHECK(fs::exists(dir / "bounds.csv"));

  const auto sdir = support::scratch("sweep");
  CHECK(run(Subcommand::sweep, config("sweep"), sdir.string()).exit_code == exit_code::ok);
  const Json rep = read_json(sdir / "sweep.json");
  bool saw_diverged = false;
  for (const auto& c : rep.at("cells")) saw_diverged |= c.at("p") == 3.0 && c.at("status") == "diverged";
  CHECK(saw_diverged);

  Json j = Json::parse(config("sweep"));
  j["sweep"]["demonstrate_divergence"] = false;
  CHECK(run(Subcommand::sweep, j.dump(), support::scratch("sweep_excluded").string()).exit_code ==
        exit_code::config_error);
}

TEST_CASE("reruns are byte identical", "[harness]") {
  for (auto [name, sub] : {std::pair{"recover_bounded_noise", Subcommand::recover}, {"bounds", Subcommand::bounds}}) {
    const auto a = support::scratch(std::string(name) + "_a");
    const auto b = support::scratch(std::string(name) + "_b");
    const auto ra = run(sub, config(name), a.string());
    const auto rb = run(sub, config(name), b.string());
    REQUIRE(ra.files.size() == rb.files.size());
    for (const auto& f : ra.files) {
      const auto leaf = fs::path(f).filename();
      CHECK(support::slurp(a / leaf) == support::slurp(b / leaf));
    }
  }
}
