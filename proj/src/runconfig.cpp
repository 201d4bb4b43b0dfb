#include "gsobe/runconfig.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gsobe/functionals.hpp"

namespace gsobe {

namespace {

std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + value + "'");
  }
  if (used != value.size()) throw ConfigError(key, "trailing junk in '" + value + "'");
  return v;
}

long long parse_int(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    throw ConfigError(key, "expected an integer, got '" + value + "'");
  }
  if (used != value.size()) throw ConfigError(key, "trailing junk in '" + value + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true") return true;
  if (value == "0" || value == "false") return false;
  throw ConfigError(key, "expected 0/1/true/false, got '" + value + "'");
}

std::vector<int> parse_size_list(const std::string& key, const std::string& value) {
  std::vector<int> sizes;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trimmed(item);
    if (item.empty()) throw ConfigError(key, "empty entry in size list");
    sizes.push_back(static_cast<int>(parse_int(key, item)));
  }
  if (sizes.empty()) throw ConfigError(key, "size list is empty");
  return sizes;
}

bool known_functional(const std::string& name) {
  return name == "bilinear_x2" || name == "bilinear_x4" || name == "bilinear_uvxx" ||
         name == "quadrilinear";
}

}  // namespace

std::vector<int> RunConfig::sweep_sizes() const {
  return lattice_sizes.empty() ? std::vector<int>{lattice_n} : lattice_sizes;
}

void RunConfig::validate_for(const std::string& cmd) const {
  if (k != 1 && k != -1) throw ConfigError("k", "must be -1 or 1");
  if (cmd == "simulate" || cmd == "linear" || cmd == "picard") {
    if (grid_n < 8 || grid_n % 2 != 0) throw ConfigError("grid_n", "must be even and >= 8");
    if (!(length > 0.0)) throw ConfigError("length", "must be positive");
    if (!(amplitude >= 0.0)) throw ConfigError("amplitude", "must be nonnegative");
    if (band_limit < 1 || band_limit >= grid_n / 2)
      throw ConfigError("band_limit", "must be in [1, grid_n/2)");
  }
  if (cmd == "simulate") {
    if (!(dt > 0.0)) throw ConfigError("dt", "must be positive");
    if (!(t_final >= dt)) throw ConfigError("t_final", "must be at least dt");
    if (!(cap_factor > 1.0)) throw ConfigError("cap_factor", "must exceed 1");
  }
  if (cmd == "linear") {
    if (!(energy_span > 0.0)) throw ConfigError("energy_span", "must be positive");
  }
  if (cmd == "picard") {
    if (!(window > 0.0) || window > 1.0) throw ConfigError("window", "must be in (0, 1]");
    if (n_iter < 1) throw ConfigError("n_iter", "must be >= 1");
    if (picard_steps < 4) throw ConfigError("picard_steps", "must be >= 4");
    if (!(dt > 0.0)) throw ConfigError("dt", "must be positive");
  }
  if (cmd == "estimates") {
    if (!known_functional(functional))
      throw ConfigError("functional", "unknown functional '" + functional + "'");
    if (n_samples < 1) throw ConfigError("n_samples", "must be >= 1");
    for (int n : sweep_sizes()) {
      if (n < 4 || n % 2 != 0)
        throw ConfigError(lattice_sizes.empty() ? "lattice_n" : "lattice_sizes",
                          "every size must be even and >= 4");
    }
    if (!(b > 0.0) || !(b < 1.0)) throw ConfigError("b", "must be in (0, 1)");
  }
  if (cmd == "lemmas") {
    if (n_draws < 1) throw ConfigError("n_draws", "must be >= 1");
    if (!(rho >= gamma) || !(gamma >= 0.0) || !(rho + gamma > 1.0))
      throw ConfigError("rho", "need rho >= gamma >= 0 and rho + gamma > 1");
    if (!(p_quad > 0.5)) throw ConfigError("p_quad", "must exceed 1/2");
    if (!(p_cubic > 1.0 / 3.0)) throw ConfigError("p_cubic", "must exceed 1/3");
  }
  if (cmd == "derive") {
    if (n_param_draws < 1) throw ConfigError("n_param_draws", "must be >= 1");
    if (n_sign_samples < 1) throw ConfigError("n_sign_samples", "must be >= 1");
  }
}

void apply_key(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "seed") {
    const long long v = parse_int(key, value);
    if (v < 0) throw ConfigError(key, "must be nonnegative");
    config.seed = static_cast<std::uint64_t>(v);
  } else if (key == "out") {
    config.out_dir = value;
  } else if (key == "k") {
    config.k = static_cast<int>(parse_int(key, value));
  } else if (key == "s") {
    config.s = parse_double(key, value);
  } else if (key == "b") {
    config.b = parse_double(key, value);
  } else if (key == "nl0") {
    config.nl0 = parse_double(key, value);
  } else if (key == "nl1") {
    config.nl1 = parse_double(key, value);
  } else if (key == "nl2") {
    config.nl2 = parse_double(key, value);
  } else if (key == "nl3") {
    config.nl3 = parse_double(key, value);
  } else if (key == "grid_n") {
    config.grid_n = static_cast<int>(parse_int(key, value));
  } else if (key == "length") {
    config.length = parse_double(key, value);
  } else if (key == "t_final") {
    config.t_final = parse_double(key, value);
  } else if (key == "dt") {
    config.dt = parse_double(key, value);
  } else if (key == "amplitude") {
    config.amplitude = parse_double(key, value);
  } else if (key == "band_limit") {
    config.band_limit = static_cast<int>(parse_int(key, value));
  } else if (key == "cap_factor") {
    config.cap_factor = parse_double(key, value);
  } else if (key == "binary") {
    config.binary_dump = parse_bool(key, value);
  } else if (key == "window") {
    config.window = parse_double(key, value);
  } else if (key == "n_iter") {
    config.n_iter = static_cast<int>(parse_int(key, value));
  } else if (key == "picard_steps") {
    config.picard_steps = static_cast<int>(parse_int(key, value));
  } else if (key == "energy_span") {
    config.energy_span = parse_double(key, value);
  } else if (key == "lattice_n") {
    config.lattice_n = static_cast<int>(parse_int(key, value));
  } else if (key == "lattice_sizes") {
    config.lattice_sizes = parse_size_list(key, value);
  } else if (key == "n_samples") {
    config.n_samples = static_cast<int>(parse_int(key, value));
  } else if (key == "functional") {
    if (!known_functional(value)) throw ConfigError(key, "unknown functional '" + value + "'");
    config.functional = value;
  } else if (key == "n_draws") {
    config.n_draws = static_cast<int>(parse_int(key, value));
  } else if (key == "rho") {
    config.rho = parse_double(key, value);
  } else if (key == "gamma") {
    config.gamma = parse_double(key, value);
  } else if (key == "p_quad") {
    config.p_quad = parse_double(key, value);
  } else if (key == "p_cubic") {
    config.p_cubic = parse_double(key, value);
  } else if (key == "n_param_draws") {
    config.n_param_draws = static_cast<int>(parse_int(key, value));
  } else if (key == "n_sign_samples") {
    config.n_sign_samples = static_cast<int>(parse_int(key, value));
  } else if (key == "preset") {
    apply_preset(config, value);
  } else {
    throw ConfigError(key, "unknown key");
  }
}

void load_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config",
                        "line " + std::to_string(lineno) + ": expected key=value, got '" + line + "'");
    const std::string key = trimmed(line.substr(0, eq));
    const std::string value = trimmed(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config", "line " + std::to_string(lineno) + ": empty key");
    apply_key(config, key, value);
  }
}

void apply_preset(RunConfig& config, const std::string& name) {
  if (name == "bi1-threshold") {
    // The xi^2 bilinear form near the top of its dual-exponent window,
    // at the matching default modulation exponent.
    config.functional = "bilinear_x2";
    config.s = -0.7;
    config.b = default_b0(FunctionalFamily::bilinear_x2, 0.7);
    config.k = -1;
    config.lattice_sizes = {16, 32};
    config.n_samples = 40;
    return;
  }
  if (name == "bi1-interior") {
    // Same form well inside the admissible window.
    config.functional = "bilinear_x2";
    config.s = 0.0;
    config.b = 0.55;
    config.k = -1;
    config.lattice_sizes = {16, 32};
    config.n_samples = 40;
    return;
  }
  if (name == "tri-star") {
    // The quadrilinear (third-power) form at its acceptance operating point.
    config.functional = "quadrilinear";
    config.s = 0.75;
    config.b = 0.51;
    config.k = -1;
    config.lattice_sizes = {16, 32};
    config.n_samples = 30;
    return;
  }
  throw ConfigError("preset", "unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"bi1-threshold", "bi1-interior", "tri-star"};
}

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace gsobe
