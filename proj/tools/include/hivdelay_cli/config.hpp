#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <hivdelay/hopf.hpp>
#include <hivdelay/model.hpp>
#include <hivdelay/params.hpp>
#include <hivdelay/roots.hpp>

namespace hivdelay::cli {

enum class Scenario { Simulate, Thresholds, Spectrum, Hopf, Sweep, Verify };

std::string_view to_string(Scenario s);

enum class LyapunovChoice { Auto, None, V0, Vs };

struct SimulateSpec {
  std::optional<double> tau;  ///< defaults to the parameter set's tau
  double t_end = 400;
  double dt = 0.1;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  LyapunovChoice lyapunov = LyapunovChoice::Auto;
};

struct SpectrumSpec {
  std::optional<EquilibriumKind> equilibrium;  ///< unset means the relevant one
  std::optional<double> tau;
  RootRegion region{};
};

struct HopfSpec {
  Interval tau_box{0.0, 2.0};
  Interval omega_box{0.0, 2.1};
  std::optional<double> omega_cap;
};

struct SweepSpec {
  std::vector<double> taus;  ///< strictly increasing
  double t_end = 16000;
  double window = 400;
  double conv_tol = 1e-4;
  double rel_tol = 1e-6;
  double abs_tol = 1e-8;
};

enum class Suite { Thresholds, Spectral, Hopf, Lyapunov, Boundedness };

std::string_view to_string(Suite s);

struct VerifySpec {
  std::vector<Suite> suites{Suite::Thresholds, Suite::Spectral, Suite::Hopf, Suite::Lyapunov, Suite::Boundedness};
  unsigned long long seed = 20140601;
  int draws = 200;
};

struct RunConfig {
  ModelParams params;
  std::vector<Scenario> run;
  SimulateSpec simulate;
  SpectrumSpec spectrum;
  HopfSpec hopf;
  SweepSpec sweep;
  VerifySpec verify;
};

/// Default sweep grid: tau = 0, 0.05, ..., 2.0 (the figure delays 0.8, 1.0,
/// 1.2, 1.45 and 1.6 are on it).
std::vector<double> default_sweep_grid();

/// Parses the flat key-value format. Model parameters use their plain names,
/// `run` lists scenarios in execution order and `<scenario>.<field>` keys
/// configure each scenario. Throws ConfigError on any unknown key, bad value
/// or violated invariant.
RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace hivdelay::cli
