// Command-line front end. Links only the C interface.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "acstab/acstab.h"

namespace {

constexpr const char* kOutputEnv = "ACSTAB_OUTPUT_DIR";
constexpr int kUsageExit = 2;

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification lab for the mixed additive-cubic functional equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool quiet = false;
  const char* names[] = {"check-lemmas", "replay-chain", "recover", "bounds", "sweep"};
  const char* help[] = {
      "Residuals of the difference operator and both characterizing relations",
      "Replay the additivity derivation chain exactly",
      "Recover additive and cubic parts and certify errors",
      "Stability series, corollary closed forms and consistency checks",
      "Grid of corollary cells with recovery runs",
  };
  for (int i = 0; i < 5; ++i) {
    auto* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("-c,--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--out-dir", out_dir,
                    std::string("Output directory (overrides $") + kOutputEnv + " and output.dir)");
    sub->add_flag("-q,--quiet", quiet, "Do not print the run summary");
  }
  app.set_version_flag("--version", acstab_version());

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  acstab_subcommand sub;
  if (acstab_subcommand_parse(name.c_str(), &sub) != ACSTAB_OK) {
    std::cerr << "acstab: " << acstab_last_error() << '\n';
    return kUsageExit;
  }

  std::string config;
  if (!read_file(config_path, config)) {
    std::cerr << "acstab: cannot read " << config_path << '\n';
    return kUsageExit;
  }
  if (out_dir.empty())
    if (const char* env = std::getenv(kOutputEnv)) out_dir = env;

  acstab_report* report = nullptr;
  if (acstab_run(sub, config.c_str(), out_dir.c_str(), &report) != ACSTAB_OK) {
    std::cerr << "acstab: " << acstab_last_error() << '\n';
    return 5;
  }
  const int code = acstab_report_exit_code(report);
  if (!quiet || code != 0) (code == 0 ? std::cout : std::cerr) << acstab_report_summary(report);
  if (!quiet)
    for (size_t i = 0; i < acstab_report_file_count(report); ++i)
      std::cout << "wrote " << acstab_report_file(report, i) << '\n';
  acstab_report_free(report);
  return code;
}
