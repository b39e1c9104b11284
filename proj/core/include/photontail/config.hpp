#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "photontail/hamiltonian.hpp"
#include "photontail/types.hpp"

namespace photontail {

/// Everything a run needs. Parsed from a flat `key = value` file with `#`
/// comments; unknown keys are rejected.
struct RunConfig {
  ModelConfig model{};
  double solver_tol = 1e-10;
  std::uint64_t seed = 20240611;

  // asym.radii = min, max, count (log-spaced)
  double radii_min = 1.0;
  double radii_max = 1e4;
  int radii_count = 20;
  // asym.directions = default | default:N | x,y,z; x,y,z; ...
  int random_directions = 4;
  std::vector<Vec3> explicit_directions;
  double ahat_max_radius = 1e3;
  double kappa = std::numeric_limits<double>::quiet_NaN();  // asym.kappa = oracle | number

  std::string out_dir = "photontail-out";

  /// Key/value pairs as written, in file order.
  std::vector<std::pair<std::string, std::string>> echo;
};

/// Accepted keys, in documentation order.
const std::vector<std::string>& config_keys();

RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Applies one key/value pair; throws ConfigError on unknown keys or bad values.
void apply_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

/// Parses "x,y,z".
Vec3 parse_vec3(const std::string& text);
/// Parses "x,y,z; x,y,z; ...".
std::vector<Vec3> parse_vec3_list(const std::string& text);
double parse_double(const std::string& text, const std::string& key);
long long parse_integer(const std::string& text, const std::string& key);

}  // namespace photontail
