#include "hivdelay/model.hpp"

#include <cmath>
#include <limits>

namespace hivdelay {

StateVector rhs(const ModelParams& pr, const StateVector& s, const StateVector& delayed) {
  const double infection_now = pr.beta * s.x() * s.v();
  const double infection_delayed = pr.beta * pr.survival() * delayed.x() * delayed.v();
  const double superinfection = pr.alpha * s.w() * s.y();
  return {
      pr.lambda - pr.d * s.x() - infection_now,
      infection_delayed - pr.a * s.y() - superinfection,
      superinfection - pr.b * s.z(),
      pr.k * s.y() - pr.p * s.v(),
      pr.c * s.z() - pr.q * s.w(),
  };
}

ThresholdSet reproduction_numbers(const ModelParams& pr) {
  ThresholdSet t;
  t.R0 = pr.k * pr.beta * pr.lambda * pr.survival() / (pr.a * pr.d * pr.p);
  const double ratio = pr.alpha * pr.c * pr.d * pr.p / (pr.beta * pr.b * pr.k * pr.q);
  t.R1 = 1.0 + 1.0 / ratio;
  t.Rd = ratio * (t.R0 - 1.0);
  return t;
}

std::optional<double> threshold_delay(const ModelParams& pr, double target) {
  if (!(target > 0.0)) return std::nullopt;
  const double r = pr.k * pr.beta * pr.lambda / (pr.a * pr.d * pr.p * target);
  constexpr double kSnap = 8 * std::numeric_limits<double>::epsilon();
  if (std::abs(r - 1.0) <= kSnap) return 0.0;
  if (r < 1.0) return std::nullopt;
  return std::log(r) / pr.a;
}

std::string_view to_string(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::DiseaseFree: return "disease-free";
    case EquilibriumKind::SingleInfection: return "single-infection";
    case EquilibriumKind::DoubleInfection: return "double-infection";
  }
  return "?";
}

std::string_view label(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::DiseaseFree: return "E0";
    case EquilibriumKind::SingleInfection: return "E_s";
    case EquilibriumKind::DoubleInfection: return "E_d";
  }
  return "?";
}

Equilibrium equilibrium(const ModelParams& pr, EquilibriumKind kind) {
  const ThresholdSet th = reproduction_numbers(pr);
  const double e = pr.survival();
  Equilibrium eq;
  eq.kind = kind;
  switch (kind) {
    case EquilibriumKind::DiseaseFree:
      eq.point = {pr.lambda / pr.d, 0, 0, 0, 0};
      eq.admissible = true;
      break;
    case EquilibriumKind::SingleInfection: {
      const double excess = pr.k * pr.beta * pr.lambda * e - pr.a * pr.d * pr.p;
      eq.point = {pr.a * pr.p / (pr.beta * pr.k * e), excess / (pr.beta * pr.a * pr.k), 0,
                  excess / (pr.beta * pr.a * pr.p), 0};
      eq.admissible = th.R0 >= 1.0;
      break;
    }
    case EquilibriumKind::DoubleInfection: {
      const double mix = pr.beta * pr.b * pr.k * pr.q + pr.alpha * pr.c * pr.d * pr.p;
      const double excess = pr.alpha * pr.beta * pr.lambda * pr.c * pr.k * e -
                            pr.beta * pr.a * pr.b * pr.k * pr.q - pr.alpha * pr.a * pr.c * pr.d * pr.p;
      eq.point = {pr.lambda * pr.alpha * pr.c * pr.p / (pr.d * pr.alpha * pr.c * pr.p + pr.beta * pr.b * pr.k * pr.q),
                  pr.b * pr.q / (pr.alpha * pr.c),
                  pr.q * excess / (pr.alpha * pr.c * mix),
                  pr.b * pr.k * pr.q / (pr.alpha * pr.c * pr.p),
                  excess / (pr.alpha * mix)};
      eq.admissible = th.R0 >= th.R1;
      break;
    }
  }
  return eq;
}

std::vector<Equilibrium> equilibria(const ModelParams& pr) {
  return {equilibrium(pr, EquilibriumKind::DiseaseFree), equilibrium(pr, EquilibriumKind::SingleInfection),
          equilibrium(pr, EquilibriumKind::DoubleInfection)};
}

std::vector<Equilibrium> admissible_equilibria(const ModelParams& pr) {
  std::vector<Equilibrium> out;
  for (auto& eq : equilibria(pr)) {
    if (eq.admissible) out.push_back(eq);
  }
  return out;
}

Equilibrium relevant_equilibrium(const ModelParams& pr) {
  const ThresholdSet th = reproduction_numbers(pr);
  if (th.R0 > th.R1) return equilibrium(pr, EquilibriumKind::DoubleInfection);
  if (th.R0 > 1.0) return equilibrium(pr, EquilibriumKind::SingleInfection);
  return equilibrium(pr, EquilibriumKind::DiseaseFree);
}

}  // namespace hivdelay
