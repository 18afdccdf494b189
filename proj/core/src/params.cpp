#include "hivdelay/params.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hivdelay/errors.hpp"

namespace hivdelay {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

void ModelParams::validate() const {
  const std::pair<const char*, double> rates[] = {
      {"lambda", lambda}, {"d", d}, {"beta", beta}, {"a", a}, {"alpha", alpha},
      {"b", b},           {"k", k}, {"p", p},       {"c", c}, {"q", q},
  };
  for (const auto& [name, value] : rates) {
    if (!std::isfinite(value) || value <= 0.0) {
      throw InvalidParameters(std::string("parameter '") + name + "' must be finite and > 0");
    }
  }
  if (!std::isfinite(tau) || tau < 0.0) {
    throw InvalidParameters("parameter 'tau' must be finite and >= 0");
  }
}

double ModelParams::survival() const { return std::exp(-a * tau); }

ModelParams reference_parameters(double tau) {
  ModelParams p;
  p.lambda = 1.0;
  p.d = 1.0 / 180.0;
  p.beta = 1.0 / 260.0;
  p.a = 0.5;
  p.alpha = 1.0 / 260.0;
  p.b = 2.0;
  p.k = 80.0;
  p.p = 3.0;
  p.c = 1800.0;
  p.q = 3.0;
  p.tau = tau;
  return p;
}

const std::vector<std::string_view>& parameter_keys() {
  static const std::vector<std::string_view> keys{"lambda", "d", "beta", "a", "alpha", "b",
                                                  "k",      "p", "c",    "q", "tau"};
  return keys;
}

std::vector<KeyValue> parse_key_values(std::string_view text) {
  std::vector<KeyValue> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");

    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const KeyValue& kv) { return kv.key == key; });
    if (duplicate) throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'");
    out.push_back({std::string(key), std::string(value), line_no});
  }
  return out;
}

double parse_decimal(std::string_view text, std::string_view what) {
  const std::string s(trim(text));
  if (s.empty()) throw ConfigError(std::string(what) + ": missing number");
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(value)) {
    throw ConfigError(std::string(what) + ": '" + s + "' is not a decimal number");
  }
  return value;
}

ModelParams params_from_entries(const std::vector<KeyValue>& entries) {
  ModelParams p;
  double* slots[] = {&p.lambda, &p.d, &p.beta, &p.a, &p.alpha, &p.b, &p.k, &p.p, &p.c, &p.q, &p.tau};
  const auto& keys = parameter_keys();
  std::vector<bool> seen(keys.size(), false);

  for (const auto& kv : entries) {
    const auto it = std::find(keys.begin(), keys.end(), kv.key);
    if (it == keys.end()) {
      throw ConfigError("line " + std::to_string(kv.line) + ": unknown key '" + kv.key + "'");
    }
    const auto idx = static_cast<std::size_t>(it - keys.begin());
    *slots[idx] = parse_decimal(kv.value, kv.key);
    seen[idx] = true;
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (!seen[i]) throw ConfigError("missing parameter '" + std::string(keys[i]) + "'");
  }
  try {
    p.validate();
  } catch (const InvalidParameters& e) {
    throw ConfigError(e.what());
  }
  return p;
}

ModelParams parse_params(std::string_view text) { return params_from_entries(parse_key_values(text)); }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ModelParams load_params(const std::filesystem::path& path) { return parse_params(read_text_file(path)); }

}  // namespace hivdelay
