#include "hivdelay_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include <hivdelay/errors.hpp>

namespace hivdelay::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto piece = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (!piece.empty()) out.push_back(piece);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

[[noreturn]] void fail(const KeyValue& kv, const std::string& why) {
  throw ConfigError("line " + std::to_string(kv.line) + ": " + kv.key + ": " + why);
}

double positive(const KeyValue& kv) {
  const double v = parse_decimal(kv.value, kv.key);
  if (!(v > 0) || !std::isfinite(v)) fail(kv, "must be positive");
  return v;
}

double nonnegative(const KeyValue& kv) {
  const double v = parse_decimal(kv.value, kv.key);
  if (!(v >= 0) || !std::isfinite(v)) fail(kv, "must be non-negative");
  return v;
}

Scenario scenario_from(const KeyValue& kv, const std::string& name) {
  static const std::map<std::string, Scenario> names{
      {"simulate", Scenario::Simulate}, {"thresholds", Scenario::Thresholds}, {"spectrum", Scenario::Spectrum},
      {"hopf", Scenario::Hopf},         {"sweep", Scenario::Sweep},           {"verify", Scenario::Verify}};
  const auto it = names.find(name);
  if (it == names.end()) fail(kv, "unknown scenario '" + name + "'");
  return it->second;
}

EquilibriumKind equilibrium_from(const KeyValue& kv) {
  if (kv.value == "E0") return EquilibriumKind::DiseaseFree;
  if (kv.value == "E_s") return EquilibriumKind::SingleInfection;
  if (kv.value == "E_d") return EquilibriumKind::DoubleInfection;
  fail(kv, "expected E0, E_s or E_d");
}

Suite suite_from(const KeyValue& kv, const std::string& name) {
  static const std::map<std::string, Suite> names{{"thresholds", Suite::Thresholds},
                                                  {"spectral", Suite::Spectral},
                                                  {"hopf", Suite::Hopf},
                                                  {"lyapunov", Suite::Lyapunov},
                                                  {"boundedness", Suite::Boundedness}};
  const auto it = names.find(name);
  if (it == names.end()) fail(kv, "unknown verify suite '" + name + "'");
  return it->second;
}

using Setter = std::function<void(RunConfig&, const KeyValue&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"simulate.tau", [](RunConfig& c, const KeyValue& kv) { c.simulate.tau = nonnegative(kv); }},
      {"simulate.t_end", [](RunConfig& c, const KeyValue& kv) { c.simulate.t_end = positive(kv); }},
      {"simulate.dt", [](RunConfig& c, const KeyValue& kv) { c.simulate.dt = positive(kv); }},
      {"simulate.rel_tol", [](RunConfig& c, const KeyValue& kv) { c.simulate.rel_tol = positive(kv); }},
      {"simulate.abs_tol", [](RunConfig& c, const KeyValue& kv) { c.simulate.abs_tol = positive(kv); }},
      {"simulate.lyapunov",
       [](RunConfig& c, const KeyValue& kv) {
         if (kv.value == "auto") c.simulate.lyapunov = LyapunovChoice::Auto;
         else if (kv.value == "none") c.simulate.lyapunov = LyapunovChoice::None;
         else if (kv.value == "V0") c.simulate.lyapunov = LyapunovChoice::V0;
         else if (kv.value == "Vs") c.simulate.lyapunov = LyapunovChoice::Vs;
         else fail(kv, "expected auto, none, V0 or Vs");
       }},
      {"spectrum.equilibrium",
       [](RunConfig& c, const KeyValue& kv) {
         if (kv.value == "auto") c.spectrum.equilibrium.reset();
         else c.spectrum.equilibrium = equilibrium_from(kv);
       }},
      {"spectrum.tau", [](RunConfig& c, const KeyValue& kv) { c.spectrum.tau = nonnegative(kv); }},
      {"spectrum.re_min", [](RunConfig& c, const KeyValue& kv) { c.spectrum.region.re_min = parse_decimal(kv.value, kv.key); }},
      {"spectrum.re_max", [](RunConfig& c, const KeyValue& kv) { c.spectrum.region.re_max = parse_decimal(kv.value, kv.key); }},
      {"spectrum.im_max", [](RunConfig& c, const KeyValue& kv) { c.spectrum.region.im_max = positive(kv); }},
      {"hopf.tau_min", [](RunConfig& c, const KeyValue& kv) { c.hopf.tau_box.lo = nonnegative(kv); }},
      {"hopf.tau_max", [](RunConfig& c, const KeyValue& kv) { c.hopf.tau_box.hi = positive(kv); }},
      {"hopf.omega_min", [](RunConfig& c, const KeyValue& kv) { c.hopf.omega_box.lo = nonnegative(kv); }},
      {"hopf.omega_max", [](RunConfig& c, const KeyValue& kv) { c.hopf.omega_box.hi = positive(kv); }},
      {"hopf.omega_cap", [](RunConfig& c, const KeyValue& kv) { c.hopf.omega_cap = positive(kv); }},
      {"sweep.taus",
       [](RunConfig& c, const KeyValue& kv) {
         c.sweep.taus.clear();
         for (const auto& item : split_list(kv.value)) {
           const double t = parse_decimal(item, kv.key);
           if (!(t >= 0) || !std::isfinite(t)) fail(kv, "delays must be non-negative");
           c.sweep.taus.push_back(t);
         }
         if (c.sweep.taus.empty()) fail(kv, "empty grid");
         if (std::adjacent_find(c.sweep.taus.begin(), c.sweep.taus.end(), std::greater_equal<>()) != c.sweep.taus.end()) {
           fail(kv, "grid must be strictly increasing");
         }
       }},
      {"sweep.t_end", [](RunConfig& c, const KeyValue& kv) { c.sweep.t_end = positive(kv); }},
      {"sweep.window", [](RunConfig& c, const KeyValue& kv) { c.sweep.window = positive(kv); }},
      {"sweep.conv_tol", [](RunConfig& c, const KeyValue& kv) { c.sweep.conv_tol = positive(kv); }},
      {"sweep.rel_tol", [](RunConfig& c, const KeyValue& kv) { c.sweep.rel_tol = positive(kv); }},
      {"sweep.abs_tol", [](RunConfig& c, const KeyValue& kv) { c.sweep.abs_tol = positive(kv); }},
      {"verify.suites",
       [](RunConfig& c, const KeyValue& kv) {
         c.verify.suites.clear();
         for (const auto& item : split_list(kv.value)) c.verify.suites.push_back(suite_from(kv, item));
       }},
      {"verify.seed",
       [](RunConfig& c, const KeyValue& kv) {
         const double v = nonnegative(kv);
         if (v != std::floor(v) || v > 1e18) fail(kv, "expected a non-negative integer");
         c.verify.seed = static_cast<unsigned long long>(v);
       }},
      {"verify.draws",
       [](RunConfig& c, const KeyValue& kv) {
         const double v = positive(kv);
         if (v != std::floor(v) || v > 1e6) fail(kv, "expected a positive integer");
         c.verify.draws = static_cast<int>(v);
       }},
  };
  return table;
}

void check_invariants(const RunConfig& c) {
  auto has = [&](Scenario s) { return std::find(c.run.begin(), c.run.end(), s) != c.run.end(); };
  if (has(Scenario::Simulate) && c.simulate.dt > c.simulate.t_end) {
    throw ConfigError("simulate.dt exceeds simulate.t_end");
  }
  if (has(Scenario::Spectrum)) {
    const auto& r = c.spectrum.region;
    if (!(r.re_min < r.re_max)) throw ConfigError("spectrum.re_min must be below spectrum.re_max");
    if (c.spectrum.equilibrium) {
      const ModelParams at = c.params.with_tau(c.spectrum.tau.value_or(c.params.tau));
      const ThresholdSet th = reproduction_numbers(at);
      const bool ok = *c.spectrum.equilibrium == EquilibriumKind::DiseaseFree ||
                      (*c.spectrum.equilibrium == EquilibriumKind::SingleInfection && th.R0 > 1) ||
                      (*c.spectrum.equilibrium == EquilibriumKind::DoubleInfection && th.R0 > th.R1);
      if (!ok) throw ConfigError("spectrum.equilibrium is not admissible at the requested delay");
    }
  }
  if (has(Scenario::Hopf)) {
    if (!(c.hopf.tau_box.lo < c.hopf.tau_box.hi)) throw ConfigError("hopf.tau_min must be below hopf.tau_max");
    if (!(c.hopf.omega_box.lo < c.hopf.omega_box.hi)) throw ConfigError("hopf.omega_min must be below hopf.omega_max");
  }
  if (has(Scenario::Sweep) && !(2 * c.sweep.window <= c.sweep.t_end)) {
    throw ConfigError("sweep.t_end must cover two classification windows");
  }
}

}  // namespace

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::Simulate: return "simulate";
    case Scenario::Thresholds: return "thresholds";
    case Scenario::Spectrum: return "spectrum";
    case Scenario::Hopf: return "hopf";
    case Scenario::Sweep: return "sweep";
    case Scenario::Verify: return "verify";
  }
  return "?";
}

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::Thresholds: return "thresholds";
    case Suite::Spectral: return "spectral";
    case Suite::Hopf: return "hopf";
    case Suite::Lyapunov: return "lyapunov";
    case Suite::Boundedness: return "boundedness";
  }
  return "?";
}

std::vector<double> default_sweep_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(i / 20.0);
  return grid;
}

RunConfig parse_run_config(std::string_view text) {
  const auto entries = parse_key_values(text);
  RunConfig cfg;
  cfg.sweep.taus = default_sweep_grid();

  std::vector<KeyValue> param_entries;
  std::vector<const KeyValue*> scenario_entries;
  for (const auto& kv : entries) {
    if (kv.key == "run") {
      for (const auto& name : split_list(kv.value)) {
        const Scenario s = scenario_from(kv, name);
        if (std::find(cfg.run.begin(), cfg.run.end(), s) != cfg.run.end()) fail(kv, "scenario listed twice");
        cfg.run.push_back(s);
      }
    } else if (kv.key.find('.') != std::string::npos) {
      scenario_entries.push_back(&kv);
    } else {
      param_entries.push_back(kv);
    }
  }
  cfg.params = params_from_entries(param_entries);
  for (const KeyValue* kv : scenario_entries) {
    const auto it = setters().find(kv->key);
    if (it == setters().end()) fail(*kv, "unknown key");
    it->second(cfg, *kv);
  }
  check_invariants(cfg);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) { return parse_run_config(read_text_file(path)); }

}  // namespace hivdelay::cli
