#include <doctest.h>

#include "photontail/errors.hpp"
#include "photontail/rng.hpp"
#include "photontail/spin.hpp"

using namespace photontail;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("pauli placement") {
  const auto s3 = sigma_op(3, 1, 1).matrix;
  Eigen::MatrixXcd d(2, 2);
  d << 1.0, 0.0, 0.0, -1.0;
  CHECK(max_abs(s3 - d) == 0.0);

  const auto s32 = sigma_op(3, 2, 2).matrix;
  Eigen::VectorXcd diag(4);
  diag << 1.0, -1.0, 1.0, -1.0;
  CHECK(max_abs(s32 - Eigen::MatrixXcd(diag.asDiagonal())) == 0.0);
  const auto s31 = sigma_op(3, 1, 2).matrix;
  diag << 1.0, 1.0, -1.0, -1.0;
  CHECK(max_abs(s31 - Eigen::MatrixXcd(diag.asDiagonal())) == 0.0);

  CHECK_THROWS_AS(pauli(0), DomainError);
  CHECK_THROWS_AS(sigma_op(1, 3, 2), DomainError);
  CHECK_THROWS_AS(sigma_op(4, 1, 1), DomainError);
}

TEST_CASE("pauli algebra") {
  for (int p : {1, 2, 3}) {
    const Index dim = Index{1} << p;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    for (int l = 1; l <= p; ++l) {
      for (int m = 1; m <= 3; ++m) {
        const auto s = sigma_op(m, l, p).matrix;
        CHECK(max_abs(s * s - id) < 1e-15);
        CHECK(max_abs(s - s.adjoint()) == 0.0);
        // sigma_1 sigma_2 = i sigma_3 and cyclic
        const auto next = sigma_op(m % 3 + 1, l, p).matrix;
        const auto third = sigma_op((m + 1) % 3 + 1, l, p).matrix;
        CHECK(max_abs(s * next - cplx(0.0, 1.0) * third) < 1e-15);
        for (int mu = 1; mu <= p; ++mu) {
          if (mu == l) continue;
          for (int n = 1; n <= 3; ++n) {
            const auto t = sigma_op(n, mu, p).matrix;
            CHECK(max_abs(s * t - t * s) <= 1e-14);
          }
        }
      }
    }
  }
}

TEST_CASE("total spin") {
  // vacuum of a 3-state Fock factor, spins down
  for (int p : {1, 2, 3}) {
    const Index sd = Index{1} << p;
    StateVector u = StateVector::Zero(3 * sd);
    u[sd - 1] = 1.0;
    const Vec3 s = total_spin(u, p);
    CHECK((s - Vec3(0, 0, -p)).norm() < 1e-15);
  }
  StateVector up = StateVector::Zero(2);
  up[0] = 1.0;
  CHECK((total_spin(up, 1) - Vec3(0, 0, 1)).norm() < 1e-15);

  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    StateVector u = rng.complex_vector(5 * 4);
    u.normalize();
    const Vec3 s = total_spin(u, 2);
    CHECK(s.norm() <= 2.0 + 1e-12);
    const Vec3 r = total_spin(std::polar(1.0, 0.37 * t) * u, 2);
    CHECK((s - r).norm() < 1e-14);
  }
  CHECK_THROWS_AS(total_spin(2.0 * up, 1), DomainError);
}

TEST_CASE("spin action on product states") {
  Rng rng(9);
  const StateVector psi = rng.complex_vector(3 * 4);
  const auto s = sigma_op(1, 2, 2).matrix;
  const StateVector out = apply_spin(psi, s);
  for (Index f = 0; f < 3; ++f) CHECK((out.segment(4 * f, 4) - s * psi.segment(4 * f, 4)).norm() < 1e-15);
  CHECK_THROWS_AS(apply_spin(rng.complex_vector(7), s), DomainError);
}
