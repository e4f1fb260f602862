#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "acstab/errors.hpp"
#include "acstab/hyers.hpp"
#include "acstab/serialize.hpp"

namespace acstab {

enum class Subcommand { check_lemmas, replay_chain, recover, bounds, sweep };

std::string_view to_string(Subcommand s);
Subcommand parse_subcommand(std::string_view text);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int config_error = 2;
inline constexpr int divergent = 3;
inline constexpr int overflow = 4;
inline constexpr int internal = 5;
}  // namespace exit_code

int exit_code_for(ErrorCode code);

/// Seeded sample request: `count` draws of dyadic coordinates k / 2^bits in
/// [lo, hi] from Sampler(seed).
struct RandomSpec {
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::int64_t lo = -8;
  std::int64_t hi = 8;
  int bits = 10;
};

/// Top-level experiment settings shared by every subcommand. Subcommand
/// sections (check_lemmas, replay_chain, bounds, sweep) stay in `raw` and are
/// read by the subcommand that owns them.
struct ExperimentConfig {
  std::size_t d = 1;
  std::size_t m = 1;
  NormKind norm = NormKind::euclidean;
  ScalarMode mode = ScalarMode::exact;
  std::optional<FuncModel> model;
  std::optional<ControlFunction> phi;  // nullopt: certify from the model
  std::optional<Direction> direction_additive;  // nullopt: auto
  std::optional<Direction> direction_cubic;
  std::vector<Point> points;
  std::vector<std::pair<Point, Point>> pairs;
  IterationOptions iteration;
  SeriesOptions series;
  std::size_t threads = 1;
  std::string output_dir;
  Json raw;
};

ExperimentConfig parse_config(const Json& j);

/// Explicit points followed by the seeded random ones.
std::vector<Point> sample_points(const Json& spec, std::size_t d, ScalarMode mode, NormKind norm);
std::vector<std::pair<Point, Point>> sample_pairs(const Json& spec, std::size_t d, ScalarMode mode,
                                                  NormKind norm);

struct RunResult {
  int exit_code = exit_code::ok;
  std::string summary;
  std::vector<std::string> files;  // in write order
};

/// Parses `config_text` and runs one subcommand, writing its reports under
/// `out_dir` (empty: the config's output.dir, else "."). Never throws;
/// failures become exit codes and an error report where one can be written.
RunResult run(Subcommand sub, std::string_view config_text, std::string_view out_dir);

}  // namespace acstab
