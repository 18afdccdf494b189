#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <hivdelay/dde_solver.hpp>

#include "hivdelay_cli/config.hpp"

namespace hivdelay::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitVerification = 3,
  kExitNumerical = 4,
};

enum class TableFormat { Csv, Json };

struct RunOptions {
  std::filesystem::path out_dir = ".";
  unsigned workers = 1;
  TableFormat format = TableFormat::Csv;
  std::optional<double> dt;  ///< overrides simulate.dt
};

/// Rounds to 12 significant digits so reports are byte-stable; NaN and
/// infinities become null.
nlohmann::json number(double value);

nlohmann::json thresholds_report(const ModelParams& params);
nlohmann::json spectrum_report(const ModelParams& params, const SpectrumSpec& spec);
nlohmann::json hopf_report(const ModelParams& params, const HopfSpec& spec);

struct SweepRow {
  double tau = 0;
  double R0 = 0;
  std::string label;  ///< E0, E_s, E_d, cycle or undetermined
  LongRunVerdict verdict;
};

/// Regime label for one delay, from classify_longrun on a run started at
/// default_history.
SweepRow classify_delay(const ModelParams& params, double tau, const SweepSpec& spec);

/// All delays of the grid, on up to `workers` threads, ordered by tau.
std::vector<SweepRow> run_sweep(const ModelParams& params, const SweepSpec& spec, unsigned workers);

std::string sweep_csv(const std::vector<SweepRow>& rows);
nlohmann::json sweep_json(const std::vector<SweepRow>& rows);

struct SuiteResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  std::vector<std::string> failures;
};

std::vector<SuiteResult> run_verification(const RunConfig& config);
nlohmann::json verify_report(const std::vector<SuiteResult>& results);

/// Executes the configured scenarios in order, writing artifacts into
/// out_dir. Returns an ExitCode; library errors propagate to the caller.
int run(const RunConfig& config, const RunOptions& options, std::ostream& log);

/// Full command-line entry point: argument parsing, config loading, error to
/// exit-code mapping.
int main_entry(int argc, char** argv);

}  // namespace hivdelay::cli
