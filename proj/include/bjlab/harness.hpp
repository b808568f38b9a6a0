#pragma once

// Experiment runner behind the bjlab command line.
//
// A run is a list of rows, one per (epsilon, trial) pair, each with its own
// RNG stream derived from (seed, row index). Rows land in index order no
// matter how many workers execute them, so the CSV is reproducible.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bjlab/blockspace.hpp"
#include "bjlab/preserver.hpp"

namespace bjlab {

enum class Mode { CheckOrtho, CheckApprox, Sip, Axioms, PreserverSweep, IsometryTest };

const char* to_string(Mode m) noexcept;
std::optional<Mode> mode_from_string(std::string_view s);

struct ExperimentConfig {
  Mode mode = Mode::CheckOrtho;
  SpaceSpec spec;
  std::vector<double> epsilons{0.5};
  int trials = 100;
  std::uint64_t seed = 0;
  std::optional<AtomPartition> partition;
  std::optional<Eigen::VectorXd> factors;  ///< isometry-test: explicit operator
  double tol = kDefaultTol;
  double zero_tol = kDefaultZeroTol;
  std::string out;
};

/// Parses a JSON config. Unknown keys, out-of-range epsilons, bad weights and
/// missing mode-specific fields raise ConfigError naming the field.
/// `mode` overrides (and must agree with) any "mode" key in the text.
ExperimentConfig parse_config(std::string_view text, std::optional<Mode> mode = std::nullopt);

struct ReportRow {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  std::string route_a;
  bool verdict_a = false;
  double margin_a = 0.0;
  std::string route_b;
  bool verdict_b = false;
  double margin_b = 0.0;
  bool boundary = false;
  TrialOutcome outcome = TrialOutcome::Fail;
};

struct RunSummary {
  std::size_t trials = 0;
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t boundary = 0;
  double max_abs_margin_pass = 0.0;
  double wall_time_s = 0.0;
  std::optional<IsometryVerdict> isometry;
};

struct RunReport {
  ExperimentConfig config;
  std::vector<ReportRow> rows;
  RunSummary summary;

  /// `#v1` comment line, column header, then one line per row.
  std::string csv() const;
  nlohmann::json summary_json() const;
  /// 0 when nothing failed, 2 otherwise.
  int exit_code() const { return summary.fail == 0 ? 0 : 2; }
};

/// Worker count from BJLAB_THREADS (default 1).
unsigned worker_count();

RunReport run(const ExperimentConfig& config, unsigned workers = 1);

/// Writes report.csv() to path; IoError on failure.
void write_csv(const RunReport& report, const std::string& path);

}  // namespace bjlab
