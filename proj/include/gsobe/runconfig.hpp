#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsobe {

/// Configuration fault that can name the key at fault, so the front end can
/// report a usage error instead of an internal one.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message),
        key_(std::move(key)) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Flat bag of every tunable the front end understands. Commands read the
/// subset they care about; validate_for() enforces the ranges that matter
/// for one command. Precedence: defaults, then config file, then preset,
/// then explicit command-line flags.
struct RunConfig {
  std::string command;
  std::uint64_t seed = 1;
  std::string out_dir = ".";

  // model
  int k = -1;
  double s = 0.5;
  double b = 0.55;
  double nl0 = 1.0, nl1 = 1.0, nl2 = 1.0, nl3 = 1.0;

  // spatial grid / time stepping
  int grid_n = 128;
  double length = 6.283185307179586;
  double t_final = 1.0;
  double dt = 1e-3;
  double amplitude = 0.01;
  int band_limit = 8;
  double cap_factor = 1e6;
  bool binary_dump = false;

  // fixed-point window
  double window = 0.1;
  int n_iter = 6;
  int picard_steps = 64;

  // free-flow verification span
  double energy_span = 10.0;

  // lattice sweeps
  int lattice_n = 32;
  std::vector<int> lattice_sizes;  // empty -> {lattice_n}
  int n_samples = 100;
  std::string functional = "bilinear_x2";

  // weight-bound checks
  int n_draws = 100;
  double rho = 2.0;
  double gamma = 1.0;
  double p_quad = 2.0;
  double p_cubic = 0.6;

  // derivation replay
  int n_param_draws = 20;
  int n_sign_samples = 200;

  /// Sizes actually swept: lattice_sizes if given, else the single lattice_n.
  std::vector<int> sweep_sizes() const;

  /// Range checks for the keys `cmd` consumes; throws ConfigError naming the
  /// offending key.
  void validate_for(const std::string& cmd) const;
};

/// Apply one key=value pair; throws ConfigError for unknown keys or
/// unparseable values. "preset" expands in place.
void apply_key(RunConfig& config, const std::string& key, const std::string& value);

/// Parse a flat key=value file ('#' comments, blank lines ignored) and apply
/// every entry in order.
void load_config_file(RunConfig& config, const std::string& path);

/// Named flag bundles. Throws ConfigError for unknown names.
void apply_preset(RunConfig& config, const std::string& name);
std::vector<std::string> preset_names();

/// Shortest round-trippable decimal form, identical across runs.
std::string fmt_g17(double v);

}  // namespace gsobe
