#pragma once

#include <stdexcept>
#include <string>

namespace hivdelay {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameters : public Error {
 public:
  using Error::Error;
};

/// Malformed or incomplete key-value input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The requested equilibrium does not exist (is not admissible) for the given parameters.
class InadmissibleEquilibrium : public Error {
 public:
  using Error::Error;
};

/// Raised by the integrator when error control drives the step below the
/// representable minimum. `time_reached()` is the last accepted time.
class StepSizeUnderflow : public Error {
 public:
  StepSizeUnderflow(const std::string& what, double time_reached)
      : Error(what), time_reached_(time_reached) {}
  double time_reached() const noexcept { return time_reached_; }

 private:
  double time_reached_;
};

class OutOfSpan : public Error {
 public:
  using Error::Error;
};

class TrajectoryTooShort : public Error {
 public:
  using Error::Error;
};

class InsufficientHistory : public Error {
 public:
  using Error::Error;
};

/// A logarithmic functional was evaluated at a state with a non-positive component.
class NonpositiveState : public Error {
 public:
  using Error::Error;
};

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

class ContourNearRoot : public Error {
 public:
  using Error::Error;
};

class Degenerate : public Error {
 public:
  using Error::Error;
};

/// The no-crossing grid scan could not separate the zero sets of R and S.
class Inconclusive : public Error {
 public:
  Inconclusive(const std::string& what, int refinement_level)
      : Error(what), refinement_level_(refinement_level) {}
  int refinement_level() const noexcept { return refinement_level_; }

 private:
  int refinement_level_;
};

}  // namespace hivdelay
