#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <dlr/state.hpp>
#include <dlr/truncation.hpp>

namespace dlr {

struct SimulationConfig {
  Scenario scenario;
  double x_length = 0.0;
  double vmin = -6.0;
  double vmax = 6.0;
  Index nx = 128;
  Index nv = 128;
  XDerivative x_derivative = XDerivative::centered; // spectral + explicit Euler is unstable at the preset dt
  double tau = 1e-3;
  double t_end = 50.0;
  Index r = 10; // initial rank, and the rank of the fixed policy
  int m = 0;
  RankPolicy policy;
  double neutrality_tol = 1e-8;
  Index sample_every = 10;
  std::string out_dir = "out";
  std::vector<double> snapshot_times;
  std::uint64_t seed = 0;

  Index steps() const;
};

SimulationConfig preset(ScenarioKind kind);

using Setting = std::pair<std::string, std::string>;

// Set one field from its text form. Throws config_error naming the key on an
// unknown key or a value of the wrong type.
void apply_setting(SimulationConfig& cfg, const std::string& key, const std::string& value);

// `key = value` lines, `#` starts a comment.
std::vector<Setting> read_settings(std::istream& is);

// Throws config_error naming the first invalid field.
void validate(const SimulationConfig& cfg);

// Start from a preset (named directly, or by the file's `scenario` key), apply
// the file, then the overrides in order, then validate.
SimulationConfig resolve_config(const std::optional<std::string>& preset_name,
                                const std::optional<std::string>& file, const std::vector<Setting>& overrides);

// Every field as `key = value`; reading this back reproduces the config.
std::string manifest(const SimulationConfig& cfg);

} // namespace dlr
