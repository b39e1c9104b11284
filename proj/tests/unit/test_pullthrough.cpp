#include <doctest.h>

#include "photontail/errors.hpp"
#include "photontail/fock.hpp"
#include "photontail/groundstate.hpp"
#include "photontail/pullthrough.hpp"
#include "photontail/resolvent.hpp"
#include "photontail/spin.hpp"
#include "test_support.hpp"

using namespace photontail;

namespace {

// -(g/sqrt2) sum_m B_m(k) (H0 - E0 + |k|)^-1 sigma_m U0 with the decoupled ground state.
AmplitudeVector first_order(const AssembledModel& m, double g, const Vec3& k) {
  const SparseHermitianOperator h0 = hamiltonian_at(m, 0.0);
  const GroundState gs0 = ground_state(h0);
  AmplitudeVector out = AmplitudeVector::zero(m.dimension());
  for (int mm = 1; mm <= 3; ++mm) {
    const StateVector f = apply_spin(gs0.vector, sigma_op(mm, 1, 1).matrix);
    const StateVector y = resolvent_apply(h0, gs0.energy, k.norm(), f);
    const CVec3 b = field_coefficient(mm, Vec3::Zero(), k, m.config.chi);
    for (int a = 0; a < 3; ++a) out.axis[a] += (-g / std::sqrt(2.0) * b[a]) * y;
  }
  return out;
}

}  // namespace

TEST_CASE("amplitude vanishes without coupling") {
  const auto s = ptest::surrogate(ptest::tiny_config(0.0));
  CHECK(photon_amplitude(s, Vec3(0.3, 0.1, -0.2)).norm() == 0.0);
  CHECK(pullthrough_residual(s, 3) == 0.0);
  CHECK(pullthrough_residual_total(s) == 0.0);
  CHECK_THROWS_AS(photon_amplitude(s, Vec3::Zero()), DomainError);
}

TEST_CASE("bound and transversality at sampled momenta") {
  const auto s = ptest::surrogate(ptest::two_spin_config(0.1));
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    const Vec3 k = (0.05 + 5.0 * rng.uniform()) * rng.unit_vector();
    const AmplitudeVector a = photon_amplitude(s, k);
    CHECK(a.norm() <= amplitude_bound(s, k) * (1.0 + 1e-12));
    CHECK(a.contract(k).norm() <= 1e-12 * std::max(a.norm(), 1e-300) * k.norm());
  }
}

TEST_CASE("first order perturbation theory") {
  const Vec3 k(0.4, -0.3, 0.8);
  double previous = 1.0;
  for (double g : {0.04, 0.02, 0.01}) {
    ModelConfig c = ptest::tiny_config(g, 2);
    c.grid = {2, 6, 4.0};
    const auto model = ptest::shared_model(c);
    const auto s = SpectralSurrogate::from_model(model);
    const AmplitudeVector exact = photon_amplitude(s, k);
    const AmplitudeVector approx = first_order(*model, g, k);
    const double rel = (exact - approx).norm() / approx.norm();
    CAPTURE(g);
    CHECK(rel < previous);
    if (g <= 0.02) CHECK(rel <= 0.1);
    previous = rel;
  }
}

TEST_CASE("truncation residual shrinks with the photon cap") {
  double previous = std::numeric_limits<double>::infinity();
  for (int n : {1, 2, 3}) {
    const auto s = ptest::surrogate(ptest::tiny_config(0.05, n));
    const double r = pullthrough_residual_total(s);
    CAPTURE(n);
    CHECK(r < previous);
    previous = r;
    // triangle inequality cap per slot
    const auto& model = *s.model();
    for (std::size_t j = 0; j < model.basis.slot_count(); ++j) {
      const double aj = ladder(model.basis, j, Ladder::annihilate, s.ground_vector()).norm();
      const Vec3 kj = model.grid[j / 2].k;
      CHECK(pullthrough_residual(s, j) <= 2.0 * aj + amplitude_bound(s, kj) * std::sqrt(model.grid[j / 2].weight));
    }
  }
}

TEST_CASE("number identity") {
  const FockBasis b(4, 2);
  StateVector vac = StateVector::Zero(2 * static_cast<Index>(b.size()));
  vac[1] = 1.0;
  NumberCheck c = number_check(b, vac);
  CHECK(c.lhs == 0.0);
  CHECK(c.rhs == 0.0);
  StateVector one = StateVector::Zero(2 * static_cast<Index>(b.size()));
  one[2] = 1.0;  // first one-photon state, spin up
  c = number_check(b, one);
  CHECK(c.lhs == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.rhs == doctest::Approx(1.0).epsilon(1e-15));

  const auto s = ptest::surrogate(ptest::two_spin_config(0.1));
  c = number_check(s);
  CHECK(c.rhs > 0.0);
  CHECK(std::abs(c.difference()) <= 1e-12 * (1.0 + c.rhs));
  CHECK(c.holds());
}

TEST_CASE("global phase covariance and caching") {
  const auto s = ptest::surrogate(ptest::two_spin_config(0.1));
  const cplx phase = std::polar(1.0, 0.7);
  const auto r = s.rephased(phase);
  const Vec3 k(0.2, 0.5, -0.1);
  const AmplitudeVector a = photon_amplitude(s, k);
  const AmplitudeVector b = photon_amplitude(r, k);
  CHECK((b - phase * a).norm() <= 1e-14 * a.norm());

  const auto fresh = ptest::surrogate(ptest::tiny_config(0.1));
  photon_amplitude(fresh, Vec3(0.0, 0.0, 1.0));
  photon_amplitude(fresh, Vec3(0.6, 0.8, 0.0));
  CHECK(fresh.cache_size() == 1);
}
