#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include <hivdelay/characteristic.hpp>
#include <hivdelay/errors.hpp>
#include <hivdelay/hopf.hpp>
#include <hivdelay/quasi_polynomial.hpp>
#include <hivdelay/roots.hpp>

#include "hivdelay_cli/run.hpp"

namespace hivdelay::cli {

using nlohmann::json;

json number(double value) {
  if (!std::isfinite(value)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

json thresholds_report(const ModelParams& params) {
  const ModelParams at0 = params.with_tau(0.0);
  const ThresholdSet th = reproduction_numbers(at0);
  auto opt = [](std::optional<double> v) { return v ? number(*v) : json(nullptr); };
  return json{{"thresholds",
               {{"R0_at_0", number(th.R0)},
                {"R1", number(th.R1)},
                {"tau1", opt(threshold_delay(at0, 1.0))},
                {"tau2", opt(threshold_delay(at0, th.R1))}}}};
}

namespace {

json roots_json(const std::vector<std::complex<double>>& roots) {
  json out = json::array();
  for (const auto& r : roots) out.push_back({{"re", number(r.real())}, {"im", number(r.imag())}});
  return out;
}

// Roots of a real quadratic, upper half-plane representatives.
std::vector<std::complex<double>> quadratic_roots(const std::array<double, 3>& c) {
  const double disc = c[1] * c[1] - 4 * c[2] * c[0];
  if (disc >= 0) {
    const double s = std::sqrt(disc);
    return {(-c[1] + s) / (2 * c[2]), (-c[1] - s) / (2 * c[2])};
  }
  return {{-c[1] / (2 * c[2]), std::sqrt(-disc) / (2 * c[2])}};
}

}  // namespace

json spectrum_report(const ModelParams& params, const SpectrumSpec& spec) {
  const ModelParams at = params.with_tau(spec.tau.value_or(params.tau));
  const EquilibriumKind kind = spec.equilibrium.value_or(relevant_equilibrium(at).kind);
  json out;
  out["equilibrium"] = std::string(label(kind));
  out["tau"] = number(at.tau);
  std::vector<std::complex<double>> roots;
  int rhp = 0;
  json hurwitz = nullptr;
  switch (kind) {
    case EquilibriumKind::DiseaseFree: {
      const auto qp = char_E0(at);
      roots = rightmost_roots(qp, spec.region);
      rhp = count_roots_right_of(qp, 0.0);
      break;
    }
    case EquilibriumKind::SingleInfection: {
      const auto f = char_Es(at);
      roots = rightmost_roots(f.d2, spec.region);
      for (const auto& r : quadratic_roots(f.d1)) {
        if (r.real() >= spec.region.re_min && r.real() <= spec.region.re_max) roots.push_back(r);
        if (r.real() > 0) rhp += r.imag() > 0 ? 2 : 1;
      }
      std::sort(roots.begin(), roots.end(), [](const auto& l, const auto& r) {
        return l.real() != r.real() ? l.real() > r.real() : l.imag() < r.imag();
      });
      rhp += count_roots_right_of(f.d2, 0.0);
      break;
    }
    case EquilibriumKind::DoubleInfection: {
      const auto qp = char_Ed(at);
      roots = rightmost_roots(qp, spec.region);
      rhp = count_roots_right_of(qp, 0.0);
      const HurwitzReport h = hurwitz_quintic(modulus_poly(qp));
      json delta = json::array();
      for (double d : h.delta) delta.push_back(number(d));
      hurwitz = {{"delta", delta}, {"stable", h.all_positive}};
      break;
    }
  }
  out["roots"] = roots_json(roots);
  out["hurwitz"] = hurwitz;
  out["rhp_count"] = rhp;
  return out;
}

json hopf_report(const ModelParams& params, const HopfSpec& spec) {
  json boundary = nullptr;
  if (const auto t = hurwitz_boundary_delay(params)) {
    boundary = {{"tau", number(*t)}, {"R0", number(reproduction_numbers(params.with_tau(*t)).R0)}};
  }
  const auto hp = find_hopf(params, spec.tau_box, spec.omega_box);
  if (!hp) return json{{"hopf", nullptr}, {"hurwitz_boundary", boundary}};
  const ThresholdSet th = reproduction_numbers(params.with_tau(0.0));
  const double tau2 = *threshold_delay(params.with_tau(0.0), th.R1);
  const Interval range{hp->tau_h, tau2};
  const double cap = spec.omega_cap.value_or(default_hopf_omega_cap(params, range));
  json certified = nullptr;
  if (no_crossing_certificate(params, range, cap).certified) certified = json::array({number(range.lo), number(range.hi)});
  return json{{"hopf",
               {{"tau", number(hp->tau_h)},
                {"omega", number(hp->omega_h)},
                {"R_h", number(hp->R_h)},
                {"dD_dxi", json::array({number(hp->dD_dxi.real()), number(hp->dD_dxi.imag())})},
                {"re_dxi_dtau", number(hp->re_dxi_dtau)},
                {"certified_range", certified}}},
              {"hurwitz_boundary", boundary}};
}

SweepRow classify_delay(const ModelParams& params, double tau, const SweepSpec& spec) {
  const ModelParams at = params.with_tau(tau);
  IntegrateOptions opts;
  opts.rel_tol = spec.rel_tol;
  opts.abs_tol = spec.abs_tol;
  const Trajectory traj = integrate(at, default_history(at), spec.t_end, opts);
  const auto candidates = admissible_equilibria(at);
  SweepRow row;
  row.tau = tau;
  row.R0 = reproduction_numbers(at).R0;
  row.verdict = classify_longrun(traj, candidates, spec.window, spec.conv_tol);
  switch (row.verdict.kind) {
    case LongRunVerdict::Kind::ConvergedTo: row.label = std::string(label(row.verdict.target->kind)); break;
    case LongRunVerdict::Kind::Oscillatory: row.label = "cycle"; break;
    case LongRunVerdict::Kind::Undetermined: row.label = "undetermined"; break;
  }
  return row;
}

std::vector<SweepRow> run_sweep(const ModelParams& params, const SweepSpec& spec, unsigned workers) {
  std::vector<SweepRow> rows(spec.taus.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      try {
        rows[i] = classify_delay(params, spec.taus[i], spec);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(rows.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  std::sort(rows.begin(), rows.end(), [](const SweepRow& l, const SweepRow& r) { return l.tau < r.tau; });
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "tau,R0,label,amp_x,amp_y,amp_z,amp_v,amp_w,period\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out += buf;
  };
  for (const auto& r : rows) {
    put(r.tau);
    out += ',';
    put(r.R0);
    out += ',' + r.label;
    const bool cycle = r.verdict.kind == LongRunVerdict::Kind::Oscillatory;
    for (double a : r.verdict.amplitude) {
      out += ',';
      if (cycle) put(a);
    }
    out += ',';
    if (cycle && std::isfinite(r.verdict.period)) put(r.verdict.period);
    out += '\n';
  }
  return out;
}

json sweep_json(const std::vector<SweepRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json row{{"tau", number(r.tau)}, {"R0", number(r.R0)}, {"label", r.label}};
    if (r.verdict.kind == LongRunVerdict::Kind::Oscillatory) {
      json amp = json::object();
      for (std::size_t i = 0; i < StateVector::kSize; ++i) amp[std::string(StateVector::kNames[i])] = number(r.verdict.amplitude[i]);
      row["amplitude"] = amp;
      row["period"] = number(r.verdict.period);
    } else {
      row["amplitude"] = nullptr;
      row["period"] = nullptr;
    }
    arr.push_back(row);
  }
  return json{{"sweep", arr}};
}

}  // namespace hivdelay::cli
