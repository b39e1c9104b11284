#include <doctest.h>

#include <Eigen/SparseLU>

#include "photontail/errors.hpp"
#include "photontail/groundstate.hpp"
#include "photontail/resolvent.hpp"
#include "test_support.hpp"

using namespace photontail;

namespace {

SparseHermitianOperator diagonal(std::initializer_list<double> d) {
  SparseMatrix m(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  Index i = 0;
  for (double v : d) {
    m.insert(i, i) = v;
    ++i;
  }
  m.makeCompressed();
  return {m, true};
}

// Hermitian tridiagonal chain, large enough for the Krylov paths.
SparseHermitianOperator chain(Index n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Eigen::Triplet<cplx>> t;
  for (Index i = 0; i < n; ++i) {
    t.emplace_back(i, i, i == 0 ? -3.0 : 4.0 * rng.uniform());  // isolated lowest level
    if (i + 1 < n) {
      const cplx c = 0.5 * rng.complex_normal();
      t.emplace_back(i, i + 1, c);
      t.emplace_back(i + 1, i, std::conj(c));
    }
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return {m, true};
}

StateVector lu_solve(const SparseHermitianOperator& h, double e, cplx z, const StateVector& f) {
  Eigen::SparseMatrix<cplx> a = h.matrix;
  for (Index i = 0; i < a.rows(); ++i) a.coeffRef(i, i) += z - e;
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu(a);
  return lu.solve(f);
}

}  // namespace

TEST_CASE("two-level closed forms") {
  const auto h = diagonal({0.0, 2.0});
  StateVector f(2);
  f << 1.0, 1.0;
  StateVector r = resolvent_apply(h, 0.0, 1.0, f);
  CHECK(std::abs(r[0] - 1.0) < 1e-15);
  CHECK(std::abs(r[1] - 1.0 / 3.0) < 1e-15);

  f << 1.0, 0.0;
  r = resolvent_apply(h, 0.0, cplx(0.0, 1.0), f);
  CHECK(std::abs(r[0] - cplx(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(r[1]) < 1e-15);
  r = resolvent_apply(h, 0.0, 0.25, f);
  CHECK((r - 4.0 * f).norm() < 1e-14);
}

TEST_CASE("inadmissible shifts") {
  const auto h = diagonal({0.0, 2.0});
  const StateVector f = StateVector::Ones(2);
  CHECK_THROWS_AS(resolvent_apply(h, 0.0, 0.0, f), DomainError);
  CHECK_THROWS_AS(resolvent_apply(h, 0.0, cplx(-0.1, 1.0), f), DomainError);
  CHECK_THROWS_AS(resolvent_apply(h, 0.0, 1.0, StateVector::Ones(3)), DomainError);
  CHECK_NOTHROW(check_shift(cplx(0.0, -3.0)));
}

TEST_CASE("krylov resolvent against sparse LU") {
  const auto h = chain(2600, 5);
  const GroundState gs = ground_state(h);
  REQUIRE_FALSE(gs.dense);
  Rng rng(6);
  const StateVector f = rng.complex_vector(h.dimension());
  for (cplx z : {cplx(0.5, 0.0), cplx(0.0, 0.3), cplx(2.0, -1.0)}) {
    const StateVector x = resolvent_apply(h, gs.energy, z, f);
    const StateVector ref = lu_solve(h, gs.energy, z, f);
    CHECK((x - ref).norm() <= 1e-8 * ref.norm());
  }
}

TEST_CASE("spectral representation of one right-hand side") {
  const auto h = chain(2600, 9);
  const GroundState gs = ground_state(h);
  Rng rng(10);
  const StateVector f = rng.complex_vector(h.dimension());
  const SpectralRhs s = spectral_rhs(h, gs, f);
  CHECK(s.residual <= 1e-10);
  CHECK(s.shifts[0] == 0.0);
  CHECK(std::abs(s.coeffs[0] - gs.vector.dot(f)) < 1e-12);
  for (cplx z : {cplx(gs.gap, 0.0), cplx(0.0, 0.5 * gs.gap), cplx(3.0, 1.0)}) {
    const StateVector ref = lu_solve(h, gs.energy, z, f);
    CHECK((s.resolvent(z) - ref).norm() <= 1e-8 * ref.norm());
  }
  // tiny shifts: the ground component is exact, the rest stays bounded
  const cplx z = 1e-9;
  const StateVector filt = s.expand(s.filter_reduced(z));
  CHECK((filt - s.coeffs[0] * gs.vector).norm() <= 1e-7 * f.norm());
}

TEST_CASE("dense spectral representation") {
  const AssembledModel m = assemble(ptest::two_spin_config(0.1));
  const GroundState gs = ground_state(m);
  REQUIRE(gs.spectrum);
  auto vecs = std::make_shared<const Eigen::MatrixXcd>(gs.spectrum->vectors);
  Rng rng(12);
  const StateVector f = rng.complex_vector(m.dimension());
  const SpectralRhs s = spectral_rhs(*gs.spectrum, vecs, f);
  for (cplx z : {cplx(0.1, 0.0), cplx(0.0, 2.0)}) {
    const StateVector ref = resolvent_apply(m.hamiltonian, gs.energy, z, f);
    CHECK((s.resolvent(z) - ref).norm() <= 1e-10 * ref.norm());
  }
}

TEST_CASE("the filter is a contraction on the closed right half plane") {
  const auto h = chain(300, 14);
  const GroundState gs = ground_state(h);
  Rng rng(15);
  for (int t = 0; t < 50; ++t) {
    const StateVector f = rng.complex_vector(h.dimension());
    const double re = t % 2 ? 0.0 : 3.0 * rng.uniform();
    const cplx z(re, 3.0 * rng.normal());
    if (z == cplx(0.0)) continue;
    const StateVector out = z * resolvent_apply(h, gs.energy, z, f);
    CHECK(out.norm() <= f.norm() * (1.0 + 1e-12));
  }
  CHECK(filter_factor(0.0, cplx(0.0, 1e-30)) == cplx(1.0));
}
