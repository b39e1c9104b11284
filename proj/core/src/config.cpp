#include "photontail/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "photontail/errors.hpp"
#include "photontail/quadrature.hpp"

namespace photontail {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "modes.n_radial", "modes.angular_order", "modes.k_max",  "chi.family",     "chi.amplitude",
      "chi.scale",      "fock.n_max",          "spins.P",      "spins.positions", "field.bext",
      "coupling.g",     "solver.tol",          "seed",         "asym.radii",     "asym.directions",
      "asym.ahat_max_radius", "asym.kappa",    "out"};
  return keys;
}

double parse_double(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(v))
    throw ConfigError(key + ": expected a finite number, got '" + text + "'");
  return v;
}

long long parse_integer(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  return v;
}

Vec3 parse_vec3(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw ConfigError("expected three comma-separated numbers, got '" + text + "'");
  return {parse_double(parts[0], "vector"), parse_double(parts[1], "vector"), parse_double(parts[2], "vector")};
}

std::vector<Vec3> parse_vec3_list(const std::string& text) {
  std::vector<Vec3> out;
  for (const auto& item : split(text, ';'))
    if (!item.empty()) out.push_back(parse_vec3(item));
  return out;
}

void apply_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  ModelConfig& m = cfg.model;
  auto positive = [&](double v) {
    if (!(v > 0.0)) throw ConfigError(key + " must be positive");
    return v;
  };
  auto int_range = [&](long long lo, long long hi) {
    const long long v = parse_integer(value, key);
    if (v < lo || v > hi)
      throw ConfigError(key + " must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(v);
  };

  if (key == "modes.n_radial") {
    m.grid.n_radial = int_range(1, 256);
  } else if (key == "modes.angular_order") {
    m.grid.angular_order = int_range(1, 10000);
    if (!is_supported_lebedev(m.grid.angular_order))
      throw ConfigError("modes.angular_order must be one of 6, 14, 26, 38, 50");
  } else if (key == "modes.k_max") {
    m.grid.k_max = positive(parse_double(value, key));
  } else if (key == "chi.family") {
    m.chi.family = parse_cutoff_family(trim(value));
  } else if (key == "chi.amplitude") {
    m.chi.amplitude = parse_double(value, key);
  } else if (key == "chi.scale") {
    m.chi.scale = positive(parse_double(value, key));
  } else if (key == "fock.n_max") {
    m.n_max = int_range(0, 255);
  } else if (key == "spins.P") {
    const int p = int_range(1, 12);
    if (static_cast<int>(m.positions.size()) != p) m.positions.assign(static_cast<std::size_t>(p), Vec3::Zero());
  } else if (key == "spins.positions") {
    m.positions = parse_vec3_list(value);
    if (m.positions.empty()) throw ConfigError("spins.positions needs at least one position");
  } else if (key == "field.bext") {
    m.bext = parse_vec3(value);
  } else if (key == "coupling.g") {
    m.g = parse_double(value, key);
    if (m.g < 0.0) throw ConfigError("coupling.g must be >= 0");
  } else if (key == "solver.tol") {
    cfg.solver_tol = positive(parse_double(value, key));
  } else if (key == "seed") {
    const long long s = parse_integer(value, key);
    if (s < 0) throw ConfigError("seed must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(s);
  } else if (key == "asym.radii") {
    const auto parts = split(value, ',');
    if (parts.size() != 3) throw ConfigError("asym.radii expects 'min, max, count'");
    cfg.radii_min = positive(parse_double(parts[0], key));
    cfg.radii_max = parse_double(parts[1], key);
    const long long n = parse_integer(parts[2], key);
    if (!(cfg.radii_max > cfg.radii_min) || n < 2 || n > 10000)
      throw ConfigError("asym.radii needs min < max and 2 <= count <= 10000");
    cfg.radii_count = static_cast<int>(n);
  } else if (key == "asym.directions") {
    const std::string v = trim(value);
    cfg.explicit_directions.clear();
    if (v == "default") {
      cfg.random_directions = 4;
    } else if (v.rfind("default:", 0) == 0) {
      const long long n = parse_integer(v.substr(8), key);
      if (n < 0 || n > 1000) throw ConfigError("asym.directions: random count must be in [0, 1000]");
      cfg.random_directions = static_cast<int>(n);
    } else {
      cfg.explicit_directions = parse_vec3_list(v);
      if (cfg.explicit_directions.empty()) throw ConfigError("asym.directions: empty list");
      for (auto& d : cfg.explicit_directions) {
        if (d.norm() == 0.0) throw ConfigError("asym.directions: zero vector");
        d.normalize();
      }
    }
  } else if (key == "asym.ahat_max_radius") {
    cfg.ahat_max_radius = positive(parse_double(value, key));
  } else if (key == "asym.kappa") {
    const std::string v = trim(value);
    cfg.kappa = v == "oracle" ? std::numeric_limits<double>::quiet_NaN() : parse_double(v, key);
  } else if (key == "out") {
    cfg.out_dir = trim(value);
    if (cfg.out_dir.empty()) throw ConfigError("out must not be empty");
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  std::vector<std::string> seen;
  bool positions_set = false;
  int declared_p = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      throw ConfigError(where + "duplicate key '" + key + "'");
    seen.push_back(key);
    try {
      if (key == "spins.P") {
        declared_p = static_cast<int>(parse_integer(value, key));
        if (positions_set) {
          if (static_cast<int>(cfg.model.positions.size()) != declared_p)
            throw ConfigError("spins.P disagrees with the number of spins.positions");
          cfg.echo.emplace_back(key, value);
          continue;
        }
      }
      apply_config_value(cfg, key, value);
      if (key == "spins.positions") {
        positions_set = true;
        if (declared_p != 0 && static_cast<int>(cfg.model.positions.size()) != declared_p)
          throw ConfigError("spins.P disagrees with the number of spins.positions");
      }
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
    cfg.echo.emplace_back(key, value);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

}  // namespace photontail
