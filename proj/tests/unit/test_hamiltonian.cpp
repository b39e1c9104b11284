#include <doctest.h>

#include "photontail/errors.hpp"
#include "photontail/fock.hpp"
#include "photontail/hamiltonian.hpp"
#include "test_support.hpp"

using namespace photontail;
using ptest::dense;

TEST_CASE("decoupled spectrum") {
  ModelConfig c = ptest::tiny_config(0.0);
  const AssembledModel m = assemble(c);
  CHECK(m.dimension() == 13 * 2);
  const Eigen::VectorXd ev = ptest::sorted_eigenvalues(m.hamiltonian.matrix);
  CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-14));

  c.bext = Vec3(0.3, -0.4, 1.2);
  c.positions = {Vec3::Zero(), Vec3(1, 0, 0)};
  const AssembledModel two = assemble(c);
  const Eigen::VectorXd ev2 = ptest::sorted_eigenvalues(two.hamiltonian.matrix);
  CHECK(ev2[0] == doctest::Approx(-2.0 * c.bext.norm()).epsilon(1e-13));
}

TEST_CASE("linear in the coupling and Hermitian") {
  const AssembledModel m = assemble(ptest::two_spin_config(0.1));
  const Eigen::MatrixXcd h0 = dense(hamiltonian_at(m, 0.0).matrix);
  const Eigen::MatrixXcd h1 = dense(hamiltonian_at(m, 0.1).matrix);
  const Eigen::MatrixXcd h2 = dense(hamiltonian_at(m, 0.2).matrix);
  CHECK(ptest::max_diff(h2 - h0, 2.0 * (h1 - h0)) < 1e-15);
  CHECK(ptest::max_diff(h1, dense(m.hamiltonian.matrix)) == 0.0);
  CHECK(m.hamiltonian.hermiticity_residual() <= 1e-12);

  Rng rng(21);
  for (int t = 0; t < 5; ++t) {
    ModelConfig c = ptest::tiny_config(0.3 * rng.uniform(), 2);
    c.bext = rng.unit_vector();
    c.positions = {rng.unit_vector(), rng.unit_vector()};
    const AssembledModel r = assemble(c);
    CHECK(r.hamiltonian.hermiticity_residual() <= 1e-12);
  }
}

TEST_CASE("free part conserves photon number") {
  const AssembledModel m = assemble(ptest::two_spin_config(0.1));
  const Eigen::MatrixXcd n = dense(kron_identity(number_operator(m.basis).matrix, m.spin_dim));
  const Eigen::MatrixXcd h0 = dense(hamiltonian_at(m, 0.0).matrix);
  CHECK(ptest::max_diff(n * h0, h0 * n) < 1e-13);
  const Eigen::MatrixXcd h = dense(m.hamiltonian.matrix);
  CHECK(ptest::max_diff(n * h, h * n) > 1e-3);
}

TEST_CASE("coupling vectors are the embedded fields") {
  const ModelConfig c = ptest::two_spin_config(0.1);
  const AssembledModel m = assemble(c);
  REQUIRE(m.couplings.size() == 6);
  for (int l = 1; l <= 2; ++l)
    for (int mm = 1; mm <= 3; ++mm) {
      const auto expect = embed_field(mm, c.positions[static_cast<std::size_t>(l - 1)], m.grid, c.chi);
      CHECK((m.couplings[AssembledModel::coupling_index(l, mm)] - expect).norm() == 0.0);
    }
}

TEST_CASE("polarization frame is a gauge choice") {
  ModelConfig c = ptest::tiny_config(0.15, 2);
  c.grid = {2, 6, 4.0};
  c.bext = Vec3(0.2, 0.1, 1.0);
  const Eigen::VectorXd a = ptest::sorted_eigenvalues(assemble(c).hamiltonian.matrix);
  c.polarization.primary = Vec3::UnitX();
  c.polarization.fallback = Vec3::UnitY();
  c.polarization.switch_threshold = 0.5;
  const Eigen::VectorXd b = ptest::sorted_eigenvalues(assemble(c).hamiltonian.matrix);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("configuration guards") {
  ModelConfig c = ptest::tiny_config();
  c.g = -0.1;
  CHECK_THROWS_AS(assemble(c), ConfigError);
  c = ptest::tiny_config();
  c.positions.assign(13, Vec3::Zero());
  CHECK_THROWS_AS(assemble(c), ConfigError);
  c = ptest::tiny_config();
  c.max_dimension = 10;
  CHECK_THROWS_AS(assemble(c), ConfigError);
}
