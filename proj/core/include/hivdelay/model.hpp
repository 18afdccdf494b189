#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "hivdelay/params.hpp"
#include "hivdelay/state.hpp"

namespace hivdelay {

/// Right-hand side of the delayed system. `delayed` is the state at t - tau;
/// only its x and v components enter (through the infection term).
StateVector rhs(const ModelParams& params, const StateVector& current, const StateVector& delayed);

struct ThresholdSet {
  double R0 = 0;  ///< basic reproduction number k beta lambda e^{-a tau} / (a d p)
  double Rd = 0;  ///< double-infection invasion number
  double R1 = 0;  ///< R0 value at which the double-infection branch appears
};

ThresholdSet reproduction_numbers(const ModelParams& params);

/// Delay tau* >= 0 with R0(tau*) = target, or nullopt if none exists.
std::optional<double> threshold_delay(const ModelParams& params, double target);

enum class EquilibriumKind { DiseaseFree, SingleInfection, DoubleInfection };

std::string_view to_string(EquilibriumKind kind);
/// Short label used in reports: "E0", "E_s", "E_d".
std::string_view label(EquilibriumKind kind);

struct Equilibrium {
  EquilibriumKind kind = EquilibriumKind::DiseaseFree;
  StateVector point;
  bool admissible = false;
};

Equilibrium equilibrium(const ModelParams& params, EquilibriumKind kind);

/// E0, E_s and E_d in that order, each with its admissibility flag
/// (E_s iff R0 >= 1, E_d iff R0 >= R1).
std::vector<Equilibrium> equilibria(const ModelParams& params);

/// The admissible subset of equilibria().
std::vector<Equilibrium> admissible_equilibria(const ModelParams& params);

/// The equilibrium expected to attract nearby states: E_d when R0 > R1,
/// E_s when 1 < R0 <= R1, otherwise E0.
Equilibrium relevant_equilibrium(const ModelParams& params);

}  // namespace hivdelay
