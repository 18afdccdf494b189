#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hivdelay {

/// Rate constants of the delayed recombinant-virus model. Units are per day
/// and per mm^3 throughout.
struct ModelParams {
  double lambda = 0;  ///< host-cell production rate (cell mm^-3 day^-1)
  double d = 0;       ///< host-cell death rate
  double beta = 0;    ///< infection rate (mm^3 vir^-1 day^-1)
  double a = 0;       ///< infected-cell death rate
  double alpha = 0;   ///< recombinant infection rate (mm^3 vir^-1 day^-1)
  double b = 0;       ///< double-infected-cell death rate
  double k = 0;       ///< HIV-1 production rate (vir cell^-1 day^-1)
  double p = 0;       ///< HIV-1 removal rate
  double c = 0;       ///< recombinant production rate (vir cell^-1 day^-1)
  double q = 0;       ///< recombinant removal rate
  double tau = 0;     ///< eclipse-phase delay (day)

  /// Throws InvalidParameters unless every rate is finite and strictly
  /// positive and tau is finite and non-negative.
  void validate() const;

  ModelParams with_tau(double new_tau) const {
    ModelParams copy = *this;
    copy.tau = new_tau;
    return copy;
  }

  /// Fraction of contacted cells surviving the eclipse phase, e^{-a tau}.
  double survival() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Worked-example parameter set: lambda=1, d=1/180, alpha=beta=1/260, a=0.5,
/// b=2, p=q=3, k=80, c=1800.
ModelParams reference_parameters(double tau = 0.0);

/// The eleven recognised parameter keys, in canonical order.
const std::vector<std::string_view>& parameter_keys();

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

/// Parses `key = value` lines. Blank lines and `#` comments are ignored.
/// Throws ConfigError on malformed lines and duplicate keys.
std::vector<KeyValue> parse_key_values(std::string_view text);

/// Strict decimal parse of a whole string; throws ConfigError.
double parse_decimal(std::string_view text, std::string_view what);

/// Builds parameters from key/value entries. All eleven keys are required;
/// unknown keys are rejected. The result is validated.
ModelParams params_from_entries(const std::vector<KeyValue>& entries);

ModelParams parse_params(std::string_view text);
ModelParams load_params(const std::filesystem::path& path);

/// Reads a whole text file; throws ConfigError when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace hivdelay
