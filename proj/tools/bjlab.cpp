// bjlab <mode> --config <path> [--seed N] [--out <path>]
//
// Exit status: 0 when every trial passed, 2 when any trial failed,
// 1 on configuration or I/O errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bjlab/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Birkhoff-James orthogonality lab"};
  std::string mode_name;
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;

  app.add_option("mode", mode_name, "check-ortho | check-approx | sip | axioms | preserver-sweep | isometry-test")
      ->required();
  app.add_option("--config", config_path, "JSON experiment config")->required();
  auto* seed_opt = app.add_option("--seed", seed, "master seed (overrides the config)");
  app.add_option("--out", out_path, "CSV output path (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    const auto mode = bjlab::mode_from_string(mode_name);
    if (!mode) throw bjlab::Error(bjlab::ErrorKind::ConfigError, "unknown mode '" + mode_name + "'");

    std::ifstream in(config_path);
    if (!in) throw bjlab::Error(bjlab::ErrorKind::IoError, "cannot read '" + config_path + "'");
    std::stringstream text;
    text << in.rdbuf();

    bjlab::ExperimentConfig cfg = bjlab::parse_config(text.str(), mode);
    if (*seed_opt) {
      // Re-parse so seed-dependent fields (random weights) follow the override.
      auto j = nlohmann::json::parse(text.str());
      j["seed"] = seed;
      cfg = bjlab::parse_config(j.dump(), mode);
    }
    if (!out_path.empty()) cfg.out = out_path;

    const bjlab::RunReport report = bjlab::run(cfg, bjlab::worker_count());
    if (!cfg.out.empty()) bjlab::write_csv(report, cfg.out);
    std::cout << report.summary_json().dump() << "\n";
    return report.exit_code();
  } catch (const bjlab::Error& e) {
    std::cerr << "bjlab: " << e.what() << "\n";
    return 1;
  }
}
