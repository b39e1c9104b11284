#include <doctest.h>

#include <sstream>

#include "photontail/config.hpp"
#include "photontail/errors.hpp"
#include "photontail/pipeline.hpp"

using namespace photontail;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.cfg");
}

}  // namespace

TEST_CASE("full configuration") {
  const RunConfig c = parse(
      "# comment line\n"
      "modes.n_radial = 4\n"
      "modes.angular_order = 14   # trailing comment\n"
      "modes.k_max = 5.5\n"
      "chi.family = exponential\n"
      "chi.amplitude = 0.5\n"
      "chi.scale = 2\n"
      "fock.n_max = 3\n"
      "spins.P = 2\n"
      "spins.positions = 0,0,0; 0.5, 0, 0\n"
      "field.bext = 0.3, -0.2, 1\n"
      "coupling.g = 0.05\n"
      "solver.tol = 1e-9\n"
      "seed = 99\n"
      "asym.radii = 2, 1e3, 7\n"
      "asym.directions = 1,0,0; 0,0,2\n"
      "asym.ahat_max_radius = 50\n"
      "asym.kappa = -1.25\n"
      "out = results\n");
  CHECK(c.model.grid.n_radial == 4);
  CHECK(c.model.grid.angular_order == 14);
  CHECK(c.model.grid.k_max == 5.5);
  CHECK(c.model.chi.family == CutoffFunction::Family::exponential);
  CHECK(c.model.chi.amplitude == 0.5);
  CHECK(c.model.chi.scale == 2.0);
  CHECK(c.model.n_max == 3);
  CHECK(c.model.particles() == 2);
  CHECK(c.model.positions[1] == Vec3(0.5, 0, 0));
  CHECK(c.model.bext == Vec3(0.3, -0.2, 1));
  CHECK(c.model.g == 0.05);
  CHECK(c.solver_tol == 1e-9);
  CHECK(c.seed == 99);
  CHECK(c.radii_min == 2.0);
  CHECK(c.radii_max == 1e3);
  CHECK(c.radii_count == 7);
  REQUIRE(c.explicit_directions.size() == 2);
  CHECK(c.explicit_directions[1] == Vec3(0, 0, 1));
  CHECK(c.ahat_max_radius == 50.0);
  CHECK(c.kappa == -1.25);
  CHECK(c.out_dir == "results");
  REQUIRE(c.echo.size() == 18);
  CHECK(c.echo[1].first == "modes.angular_order");
  CHECK(c.echo[1].second == "14");
  CHECK(config_keys().size() == 18);
}

TEST_CASE("defaults and direction specs") {
  const RunConfig d = parse("");
  CHECK(d.model.grid.n_radial == 6);
  CHECK(d.model.n_max == 2);
  CHECK(std::isnan(d.kappa));
  CHECK(d.random_directions == 4);
  CHECK(parse("asym.directions = default:0\n").random_directions == 0);
  CHECK(std::isnan(parse("asym.kappa = oracle\n").kappa));
  CHECK(config_radii(d).size() == 20);
  const auto dirs = config_directions(d, Vec3(0, 0, -1));
  CHECK(dirs.size() == 6);
}

TEST_CASE("rejected input") {
  CHECK_THROWS_AS(parse("modes.nradial = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse("coupling.g = 0.1\ncoupling.g = 0.2\n"), ConfigError);
  CHECK_THROWS_AS(parse("coupling.g = -0.1\n"), ConfigError);
  CHECK_THROWS_AS(parse("coupling.g = 0.1x\n"), ConfigError);
  CHECK_THROWS_AS(parse("coupling.g\n"), ConfigError);
  CHECK_THROWS_AS(parse("modes.angular_order = 7\n"), ConfigError);
  CHECK_THROWS_AS(parse("modes.k_max = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse("chi.family = lorentzian\n"), ConfigError);
  CHECK_THROWS_AS(parse("fock.n_max = 2.5\n"), ConfigError);
  CHECK_THROWS_AS(parse("spins.P = 2\nspins.positions = 0,0,0\n"), ConfigError);
  CHECK_THROWS_AS(parse("spins.positions = 0,0,0\nspins.P = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse("field.bext = 1, 2\n"), ConfigError);
  CHECK_THROWS_AS(parse("asym.radii = 10, 1, 5\n"), ConfigError);
  CHECK_THROWS_AS(parse("asym.directions = 0,0,0\n"), ConfigError);
  CHECK_THROWS_AS(parse("seed = -4\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/photontail.cfg"), ConfigError);
  try {
    parse("\n\nbogus = 1\n");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("test.cfg:3") != std::string::npos);
  }
}

TEST_CASE("P sets default positions") {
  const RunConfig c = parse("spins.P = 3\n");
  CHECK(c.model.particles() == 3);
  CHECK(format_double(0.1) == "0.10000000000000001");
}
