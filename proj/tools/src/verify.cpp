#include <cmath>
#include <random>
#include <sstream>

#include <hivdelay/hivdelay.hpp>

#include "hivdelay_cli/run.hpp"

namespace hivdelay::cli {
namespace {

class Tally {
 public:
  explicit Tally(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const std::string& what) {
    if (ok) {
      ++result_.passed;
    } else {
      ++result_.failed;
      if (result_.failures.size() < 20) result_.failures.push_back(what);
    }
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

// Every rate of `base` scaled by an independent log-uniform factor in [1/2, 2].
ModelParams jitter(const ModelParams& base, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-std::log(2.0), std::log(2.0));
  ModelParams p = base;
  for (double* f : {&p.lambda, &p.d, &p.beta, &p.a, &p.alpha, &p.b, &p.k, &p.p, &p.c, &p.q}) *f *= std::exp(u(rng));
  return p;
}

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)}); }

std::string describe(const char* what, double tau) {
  std::ostringstream s;
  s << what << " at tau=" << tau;
  return s.str();
}

SuiteResult thresholds_suite(const RunConfig& cfg, std::mt19937_64& rng) {
  Tally t("thresholds");
  for (int i = 0; i < cfg.verify.draws; ++i) {
    const ModelParams p = jitter(cfg.params, rng).with_tau(0.0);
    const ThresholdSet th = reproduction_numbers(p);
    for (double target : {1.0, th.R1}) {
      if (auto tau = threshold_delay(p, target)) {
        t.check(std::abs(reproduction_numbers(p.with_tau(*tau)).R0 - target) <= 1e-10 * std::max(1.0, target),
                "threshold_delay round trip");
      }
    }
    std::uniform_real_distribution<double> td(0.0, 3.0);
    const ModelParams at = p.with_tau(td(rng));
    for (const auto& e : admissible_equilibria(at)) {
      const StateVector f = rhs(at, e.point, e.point);
      const StateVector& s = e.point;
      // Sum of the magnitudes of every flux term, so the test is relative.
      const double scale = at.lambda + at.d * s.x() + at.beta * s.x() * s.v() + at.a * s.y() +
                           at.alpha * s.w() * s.y() + at.b * s.z() + at.k * s.y() + at.p * s.v() + at.c * s.z() +
                           at.q * s.w();
      t.check(f.max_abs() <= 1e-10 * scale, describe("equilibrium residual", at.tau));
    }
  }
  return t.take();
}

SuiteResult spectral_suite(const RunConfig& cfg, std::mt19937_64& rng) {
  Tally t("spectral");
  std::uniform_real_distribution<double> td(0.0, 3.0);
  for (int i = 0; i < cfg.verify.draws; ++i) {
    const ModelParams p = jitter(cfg.params, rng).with_tau(td(rng));
    const ThresholdSet th = reproduction_numbers(p);
    if (th.R0 > 1) {
      const ModelParams& m = p;
      const ModulusPolynomial hs = modulus_poly(char_Es(p).d2);
      const double R0 = th.R0;
      t.check(close_rel(hs.h(1), m.a * m.a + m.p * m.p + m.d * m.d * R0 * R0, 1e-10), "H_s s^2 identity");
      t.check(close_rel(hs.h(2), m.d * m.d * (m.a * m.a + m.p * m.p) * R0 * R0, 1e-10), "H_s s identity");
      t.check(close_rel(hs.h(3), m.a * m.a * m.p * m.p * m.d * m.d * (R0 * R0 - 1), 1e-10), "H_s constant identity");
      t.check(positive_roots(hs).empty(), describe("H_s positive root", p.tau));
    }
    if (th.R0 > th.R1) {
      const HurwitzReport h = hurwitz_quintic(modulus_poly(char_Ed(p)));
      const double closed = th.R1 * th.R1 * p.d * p.d + p.a * p.a * th.R0 * th.R0 / (th.R1 * th.R1) + p.p * p.p +
                            (p.b + p.q) * (p.b + p.q);
      t.check(close_rel(h.delta[0], closed, 1e-10), "Delta_1 closed form");
    }
  }
  // Winding count against the Newton census, on a handful of draws.
  for (int i = 0; i < std::min(cfg.verify.draws, 10); ++i) {
    const ModelParams p = jitter(cfg.params, rng).with_tau(td(rng));
    const QuasiPolynomial qp = char_E0(p);
    const int count = count_roots_right_of(qp, 0.0);
    const double bound = root_modulus_bound(qp, 0.0);
    int census = 0;
    for (const auto& r : rightmost_roots(qp, RootRegion{-0.5, bound + 0.5, bound + 0.5}, std::max(0.25, bound / 60))) {
      if (r.real() > 0) census += r.imag() > 0 ? 2 : 1;
    }
    t.check(count == census, describe("E0 winding count vs Newton census", p.tau));
  }
  return t.take();
}

SuiteResult hopf_suite(const RunConfig& cfg) {
  Tally t("hopf");
  const ModelParams p = cfg.params.with_tau(0.0);
  const ThresholdSet th = reproduction_numbers(p);
  if (!(th.R0 > th.R1)) {
    t.check(!find_hopf(p, {0.0, 10.0}, {0.0, 10.0}).has_value(), "no Hopf point without E_d");
    return t.take();
  }
  const double tau2 = *threshold_delay(p, th.R1);
  const auto hp = find_hopf(p, cfg.hopf.tau_box, cfg.hopf.omega_box);
  if (!hp) {
    t.check(true, "no Hopf point in the search boxes");
    return t.take();
  }
  const QuasiPolynomial qp = char_Ed(p.with_tau(hp->tau_h));
  const std::complex<double> xi(0.0, hp->omega_h);
  t.check(std::abs(eval(qp, xi)) < 1e-9 * magnitude_scale(qp, xi), "Hopf residual");
  t.check(hp->omega_h > 0 && std::abs(hp->dD_dxi) > 0, "Hopf nondegeneracy");
  t.check(hp->R_h > th.R1, "R_h above R1");
  const Interval range{hp->tau_h, tau2};
  const double cap = cfg.hopf.omega_cap.value_or(default_hopf_omega_cap(p, range));
  try {
    const auto cert = no_crossing_certificate(p, range, cap);
    if (cert.certified) {
      std::optional<int> first;
      for (int k = 1; k <= 5; ++k) {
        const double tau = range.lo + range.width() * k / 6.0;
        const int n = count_roots_right_of(char_Ed(p.with_tau(tau)), 0.0);
        if (!first) first = n;
        t.check(n == *first, describe("RHP count constant on certified range", tau));
      }
    } else {
      t.check(true, "certificate not issued");
    }
  } catch (const Inconclusive& e) {
    t.check(false, e.what());
  }
  return t.take();
}

SuiteResult lyapunov_suite(const RunConfig& cfg, std::mt19937_64& rng) {
  Tally t("lyapunov");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < cfg.verify.draws; ++i) {
    std::vector<double> a(1 + i % 5), b(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      a[j] = std::exp(8 * u(rng) - 4);
      b[j] = std::exp(8 * u(rng) - 4);
    }
    t.check(log_mean_inequality(a, b) <= 1e-12, "log-mean inequality");
  }
  const ModelParams p = cfg.params.with_tau(0.0);
  const ThresholdSet th = reproduction_numbers(p);
  auto random_history = [&](const StateVector& around) {
    StateVector s = around;
    for (double& c : s) c = std::max(c, 0.05) * (0.5 + u(rng));
    return HistorySpec::constant(s);
  };
  auto sweep_rates = [&](const ModelParams& at, auto evaluate, const char* name) {
    for (int r = 0; r < 3; ++r) {
      const HistorySpec h = random_history(relevant_equilibrium(at).point);
      const Trajectory traj = integrate(at, h, 120.0);
      for (int k = 1; k <= 20; ++k) {
        const double time = 100.0 * k / 20.0;
        const LyapunovSample s = evaluate(at, traj, time);
        t.check(s.rate_accepted && s.rate <= 1e-8 * std::max(1.0, std::abs(s.value)), describe(name, at.tau));
      }
    }
  };
  if (auto tau1 = threshold_delay(p, 1.0)) sweep_rates(p.with_tau(*tau1 + 1.0), v0_eval, "V0 rate");
  if (auto tau1 = threshold_delay(p, 1.0); tau1 && th.R0 > th.R1) {
    const double tau2 = *threshold_delay(p, th.R1);
    sweep_rates(p.with_tau(0.5 * (tau2 + *tau1)), vs_eval, "V_s rate");
  }
  return t.take();
}

SuiteResult boundedness_suite(const RunConfig& cfg, std::mt19937_64& rng) {
  Tally t("boundedness");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const ModelParams& p = cfg.params;
  for (int r = 0; r < 5; ++r) {
    StateVector s;
    for (double& c : s) c = u(rng) < 0.2 ? 0.0 : 200.0 * u(rng);
    const Trajectory traj = integrate(p, HistorySpec::constant(s), 60.0 + p.tau);
    bool nonneg = true;
    double scale = 1.0;
    for (const auto& m : traj.mesh()) scale = std::max(scale, m.state.max_abs());
    for (const auto& m : traj.mesh()) {
      for (double c : m.state) nonneg = nonneg && c >= -1e-9 * scale;
    }
    t.check(nonneg, "nonnegativity");
    std::vector<double> times;
    for (int k = 1; k <= 50; ++k) times.push_back(55.0 * k / 50.0);
    t.check(boundedness_certificate(p, traj, times).holds(), "boundedness bound");
  }
  return t.take();
}

}  // namespace

std::vector<SuiteResult> run_verification(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.verify.seed);
  std::vector<SuiteResult> out;
  for (Suite s : cfg.verify.suites) {
    switch (s) {
      case Suite::Thresholds: out.push_back(thresholds_suite(cfg, rng)); break;
      case Suite::Spectral: out.push_back(spectral_suite(cfg, rng)); break;
      case Suite::Hopf: out.push_back(hopf_suite(cfg)); break;
      case Suite::Lyapunov: out.push_back(lyapunov_suite(cfg, rng)); break;
      case Suite::Boundedness: out.push_back(boundedness_suite(cfg, rng)); break;
    }
  }
  return out;
}

nlohmann::json verify_report(const std::vector<SuiteResult>& results) {
  nlohmann::json suites = nlohmann::json::object();
  int passed = 0, failed = 0;
  for (const auto& r : results) {
    suites[r.name] = {{"passed", r.passed}, {"failed", r.failed}, {"failures", r.failures}};
    passed += r.passed;
    failed += r.failed;
  }
  return {{"verify", {{"suites", suites}, {"passed", passed}, {"failed", failed}}}};
}

}  // namespace hivdelay::cli
