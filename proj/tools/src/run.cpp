#include <cmath>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <hivdelay/hivdelay.hpp>

#include "hivdelay_cli/run.hpp"

namespace hivdelay::cli {
namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) { write_text(path, doc.dump(2) + "\n"); }

std::string fmt_row(std::initializer_list<double> values) {
  std::string line;
  char buf[40];
  for (double v : values) {
    if (!line.empty()) line += ',';
    std::snprintf(buf, sizeof buf, "%.15g", v);
    line += buf;
  }
  return line + '\n';
}

std::vector<double> output_times(double t_end, double dt) {
  std::vector<double> times;
  const auto n = static_cast<long long>(std::floor(t_end / dt + 1e-9));
  for (long long i = 0; i <= n; ++i) times.push_back(std::min(t_end, static_cast<double>(i) * dt));
  if (times.back() < t_end) times.push_back(t_end);
  return times;
}

void simulate(const RunConfig& cfg, const RunOptions& opt, std::ostream& log) {
  const SimulateSpec& spec = cfg.simulate;
  const ModelParams at = cfg.params.with_tau(spec.tau.value_or(cfg.params.tau));
  IntegrateOptions io;
  io.rel_tol = spec.rel_tol;
  io.abs_tol = spec.abs_tol;
  const Trajectory traj = integrate(at, default_history(at), spec.t_end, io);
  const double dt = opt.dt.value_or(spec.dt);
  const auto times = output_times(spec.t_end, dt);

  std::string csv = "t,x,y,z,v,w\n";
  for (double t : times) {
    const StateVector s = traj.sample(t);
    csv += fmt_row({t, s.x(), s.y(), s.z(), s.v(), s.w()});
  }
  write_text(opt.out_dir / "trajectory.csv", csv);
  log << "simulate: tau=" << at.tau << ", " << traj.mesh().size() << " steps, wrote trajectory.csv\n";

  LyapunovChoice choice = spec.lyapunov;
  if (choice == LyapunovChoice::Auto) {
    const ThresholdSet th = reproduction_numbers(at);
    choice = th.R0 < 1 ? LyapunovChoice::V0 : (th.R0 < th.R1 ? LyapunovChoice::Vs : LyapunovChoice::None);
  }
  if (choice == LyapunovChoice::None) return;
  std::string lcsv = "t,V,dVdt\n";
  for (double t : times) {
    if (t < kLyapunovStep || t + kLyapunovStep > traj.end()) continue;
    const LyapunovSample s = choice == LyapunovChoice::V0 ? v0_eval(at, traj, t) : vs_eval(at, traj, t);
    lcsv += fmt_row({s.t, s.value, s.rate});
  }
  write_text(opt.out_dir / "lyapunov.csv", lcsv);
  log << "simulate: wrote lyapunov.csv (" << (choice == LyapunovChoice::V0 ? "V0" : "V_s") << ")\n";
}

}  // namespace

int run(const RunConfig& cfg, const RunOptions& opt, std::ostream& log) {
  if (cfg.run.empty()) return kExitOk;
  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + opt.out_dir.string() + "'");

  int status = kExitOk;
  for (Scenario s : cfg.run) {
    switch (s) {
      case Scenario::Simulate:
        simulate(cfg, opt, log);
        break;
      case Scenario::Thresholds:
        write_json(opt.out_dir / "thresholds.json", thresholds_report(cfg.params));
        log << "thresholds: wrote thresholds.json\n";
        break;
      case Scenario::Spectrum:
        write_json(opt.out_dir / "spectrum.json", spectrum_report(cfg.params, cfg.spectrum));
        log << "spectrum: wrote spectrum.json\n";
        break;
      case Scenario::Hopf:
        write_json(opt.out_dir / "hopf.json", hopf_report(cfg.params, cfg.hopf));
        log << "hopf: wrote hopf.json\n";
        break;
      case Scenario::Sweep: {
        const auto rows = run_sweep(cfg.params, cfg.sweep, opt.workers);
        if (opt.format == TableFormat::Csv) {
          write_text(opt.out_dir / "sweep.csv", sweep_csv(rows));
        } else {
          write_json(opt.out_dir / "sweep.json", sweep_json(rows));
        }
        log << "sweep: " << rows.size() << " delays classified\n";
        break;
      }
      case Scenario::Verify: {
        const auto results = run_verification(cfg);
        const auto report = verify_report(results);
        write_json(opt.out_dir / "verify.json", report);
        for (const auto& r : results) {
          log << "verify " << r.name << ": " << r.passed << " passed, " << r.failed << " failed\n";
          for (const auto& f : r.failures) log << "  failed: " << f << '\n';
        }
        if (report["verify"]["failed"].get<int>() > 0) status = kExitVerification;
        break;
      }
    }
  }
  return status;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Delayed HIV recombinant-virus model: thresholds, spectra, Hopf analysis and regime sweeps"};
  std::string config_path;
  RunOptions opt;
  std::string out_dir = ".";
  std::string format = "csv";
  double dt = 0;
  app.add_option("--config", config_path, "Key-value configuration file")->required();
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--workers", opt.workers, "Concurrent sweep workers")->check(CLI::Range(1u, 1024u));
  app.add_option("--format", format, "Sweep table format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--dt", dt, "Trajectory output spacing (overrides simulate.dt)")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  opt.out_dir = out_dir;
  opt.format = format == "json" ? TableFormat::Json : TableFormat::Csv;
  if (dt > 0) opt.dt = dt;

  try {
    const RunConfig cfg = load_run_config(config_path);
    return run(cfg, opt, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidParameters& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InadmissibleEquilibrium& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace hivdelay::cli
