#include <doctest.h>

#include <cmath>

#include "photontail/asymptotics.hpp"
#include "photontail/errors.hpp"
#include "photontail/pullthrough.hpp"
#include "test_support.hpp"

using namespace photontail;

namespace {

const double kCalibration = 0.75 * std::sqrt(kPi);  // int_0^inf (r^2+1) e^{-r^2} dr

SpectralSurrogate two_level() {
  SparseMatrix h(2, 2);
  h.insert(1, 1) = 1.0;
  h.makeCompressed();
  return SpectralSurrogate::from_operator({h, true}, 1, 0.1, CutoffFunction{}, {Vec3::Zero()});
}

SpectralSurrogate small_model(double g = 0.1) {
  ModelConfig c = ptest::tiny_config(g, 2);
  c.grid = {2, 6, 4.0};
  c.bext = Vec3(0.3, -0.2, 1.0);
  return ptest::surrogate(c);
}

}  // namespace

TEST_CASE("sphere identity") {
  CHECK(sphere_integral_reference(Vec3::UnitZ(), 3, 1.0).norm() == 0.0);
  const CVec3 pi_case = sphere_integral_reference(Vec3::UnitZ(), 1, kPi);
  CHECK(std::abs(pi_case[0]) < 1e-15);
  CHECK(std::abs(pi_case[1] - cplx(0.0, -4.0)) < 1e-14);
  CHECK(std::abs(pi_case[2]) < 1e-15);

  const double small = 0.01;
  const Vec3 v = Vec3(1, 2, 2) / 3.0;
  const double mag = sphere_integral_reference(v, 2, small).norm();
  const double taylor = 4.0 * kPi / 3.0 * small * v.cross(Vec3::UnitY()).norm();
  CHECK(std::abs(mag - taylor) <= 0.01 * taylor);

  Rng rng(41);
  for (double lam : {0.1, 1.0, kPi, 10.0}) {
    for (int t = 0; t < 3; ++t) {
      const Vec3 d = rng.unit_vector();
      const int m = 1 + t;
      CHECK((sphere_integral_reference(d, m, lam) - sphere_integral_quadrature(d, m, lam)).norm() <= 1e-8);
    }
  }
  CHECK_THROWS_AS(sphere_integral_reference(v, 1, 0.0), DomainError);
  CHECK_THROWS_AS(sphere_integral_reference(v, 4, 1.0), DomainError);
}

TEST_CASE("kernel series and closed form meet smoothly") {
  for (double x : {1e-6, 0.3, 0.999999, 1.000001, 2.0, 50.0, 3000.0}) {
    // below 1/2 the closed form cancels, so compare with four Taylor terms there
    const double closed = x < 0.5 ? -x / 3.0 + x * x * x / 30.0 - std::pow(x, 5) / 840.0 + std::pow(x, 7) / 45360.0
                                   : std::cos(x) / x - std::sin(x) / (x * x);
    const double tol = x < 0.5 ? 1e-9 * x : 1e-14;
    CHECK(std::abs(sphere_kernel(x) - closed) <= tol);
    CHECK(std::abs(sphere_kernel(x)) <= std::min(x / 3.0, 1.0 / x + 1.0 / (x * x)) + 1e-15);
  }
  CHECK(sphere_kernel(-0.4) == doctest::Approx(-sphere_kernel(0.4)));
  CHECK(radial_kernel(3.0, 0.5) == sphere_kernel(1.5));
}

TEST_CASE("filter on a two-level system") {
  const auto s = two_level();
  // one Fock state times one spin: H = diag(0, 1)
  const StateVector f = StateVector::Ones(2);
  const StateVector u = s.ground_vector();
  const StateVector out = operator_filter(1e-6, s, f);
  CHECK(std::abs(out[0] - f[0]) < 1e-15);
  CHECK(std::abs(out[1] - 1e-6 / (1.0 + 1e-6)) < 1e-15);
  CHECK((operator_filter(cplx(0.0, 3.0), s, u) - u).norm() < 1e-15);

  std::vector<cplx> zs;
  for (int n = 1; n <= 10; ++n) zs.emplace_back(1.0 / n, 0.0);
  const ProjectionTable t = projection_limit_check(s, f, zs);
  for (const auto& row : t.rows) CHECK(std::abs(row.error - std::abs(row.z / (row.z + 1.0))) < 1e-15);
  CHECK(t.eventually_monotone());
}

TEST_CASE("projection limits on a random Hermitian fixture") {
  const auto s = SpectralSurrogate::random_fixture(25, 1, 2024);
  CHECK(s.dimension() == 50);
  Rng rng(3);
  const StateVector f = rng.complex_vector(50);
  std::vector<cplx> real_seq, imag_seq;
  for (int n = 0; n <= 6; ++n) {
    const double z = std::pow(10.0, -n) * s.gap();
    real_seq.emplace_back(z, 0.0);
    imag_seq.emplace_back(0.0, z);
  }
  for (const auto* seq : {&real_seq, &imag_seq}) {
    const ProjectionTable t = projection_limit_check(s, f, *seq);
    CHECK(t.final_error() <= 1e-4 * f.norm());
    CHECK(t.eventually_monotone());
  }
  // f orthogonal to U: the limit is zero
  const StateVector perp = f - s.ground_vector().dot(f) * s.ground_vector();
  const ProjectionTable t = projection_limit_check(s, perp, imag_seq);
  CHECK(operator_filter(imag_seq.back(), s, perp).norm() <= 1e-5 * perp.norm());
  CHECK(t.final_error() <= 1e-5 * perp.norm());

  for (int k = 0; k < 20; ++k) {
    const StateVector g = rng.complex_vector(50);
    const cplx z(0.0, rng.normal());
    CHECK(operator_filter(z, s, g).norm() <= g.norm() * (1.0 + 1e-12));
  }
}

TEST_CASE("contour calibration and the limit constant") {
  CHECK(std::abs(contour_calibration() - kCalibration) <= 1e-10);
  CHECK(std::abs(kCalibration - 1.3293403881791) < 1e-12);
  CHECK(std::abs(kappa_oracle() + 3.0 * std::sqrt(2.0) / 4.0) <= 1e-10);
  CHECK(std::abs(std::abs(kappa_oracle()) - kKappaDerived) <= 1e-10);
  CHECK(kKappaQuoted == doctest::Approx(3.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("contour and direct radial integrals agree") {
  const auto s = small_model();
  for (std::size_t rhs = 0; rhs < 3; ++rhs) {
    const double fn = s.f(rhs).norm();
    for (double r : {1.0, 3.0, 10.0, 30.0, 100.0, 1e4}) {
      const StateVector c = radial_integral_contour(s, rhs, r);
      CHECK(std::pow(r, 2.5) * c.norm() <= 2.0 * fn * kCalibration * (1.0 + 1e-12));
      if (r >= 10.0 && r <= 100.0) {
        const StateVector d = radial_integral_direct(s, rhs, r);
        CHECK((c - d).norm() <= 1e-6 * c.norm());
      }
    }
  }
  CHECK_THROWS_AS(radial_integral_contour(s, 0, 0.5), DomainError);
  CHECK(radial_integral_direct(s, 0, 0.5).allFinite());
}

TEST_CASE("reduced amplitude: trivial cases and the lemma split") {
  const auto zero = small_model(0.0);
  CHECK(a_hat(zero, Vec3(2, 0, 0)).norm() == 0.0);
  CHECK(b_field(zero, Vec3(2, 0, 0)).norm() == 0.0);

  const auto s = small_model();
  const Vec3 x = 20.0 * Vec3(1, 2, -2) / 3.0;
  const AmplitudeVector d = a_hat(s, x) - b_field(s, x);
  const AmplitudeVector l = lemma_difference(s, x);
  CHECK((d - l).norm() <= 1e-6 * l.norm());
  CHECK_THROWS_AS(a_hat(s, Vec3::Zero()), DomainError);

  CutoffFunction none;
  none.amplitude = 0.0;
  SparseMatrix h(2, 2);
  h.insert(1, 1) = 1.0;
  const auto flat = SpectralSurrogate::from_operator({h, true}, 1, 0.1, none, {Vec3::Zero()});
  CHECK(b_field(flat, Vec3(3, 0, 0)).norm() == 0.0);
}

TEST_CASE("reduced amplitude matches a coarse tensor grid") {
  const auto s = small_model();
  BruteForceOptions o;
  o.n_radial = 32;
  o.n_theta = 24;
  o.n_phi = 48;
  o.refine = false;
  const Vec3 x(0.6, -0.0, 0.8);
  const AmplitudeVector reduced = a_hat(s, x);
  const BruteForceResult brute = a_hat_bruteforce(s, x, o);
  CHECK((reduced - brute.value).norm() <= 1e-3 * reduced.norm());
  o.max_radius = 0.5;
  CHECK_THROWS_AS(a_hat_bruteforce(s, x, o), DomainError);
}

TEST_CASE("predicted limit geometry") {
  const auto s = small_model();
  const Vec3 spin = s.total_spin();
  const double kappa = kappa_oracle();
  CHECK(predicted_limit(s, spin.normalized(), kappa).norm() <= 1e-15);
  const Vec3 v = Vec3::UnitX();
  const AmplitudeVector p = predicted_limit(s, v, kappa);
  const double scale = std::abs(kappa * s.g() * s.chi().at_zero());
  CHECK(p.norm() == doctest::Approx(scale * v.cross(spin).norm()).epsilon(1e-14));
  // e1 x (0,0,s) = -s e2
  CHECK((p.axis[1] - (kappa * s.g() * -spin.z()) * s.ground_vector()).norm() <= 1e-14);
}

TEST_CASE("fits, radii and directions") {
  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(std::pow(10.0, 0.3 * i));
    y.push_back(4.0 * std::pow(x.back(), -2.5));
  }
  const LinearFit f = fit_loglog(x, y, 1.0, 1e3);
  CHECK(f.slope == doctest::Approx(-2.5).epsilon(1e-12));
  CHECK(std::exp(f.intercept) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(f.residual_rms < 1e-12);
  CHECK(f.points == 10);

  const auto r = log_radii(1.0, 1e4, 5);
  CHECK(r.front() == 1.0);
  CHECK(r.back() == 1e4);
  CHECK(r[2] == doctest::Approx(100.0).epsilon(1e-14));
  CHECK_THROWS_AS(log_radii(0.0, 1.0, 3), ConfigError);

  const auto d = default_directions(Vec3(0, 0, -0.9), 3, 1);
  REQUIRE(d.size() == 5);
  CHECK((d[0] - Vec3(0, 0, -1)).norm() < 1e-15);
  CHECK(std::abs(d[1].dot(d[0])) < 1e-15);
  CHECK(std::abs(d[1].norm() - 1.0) < 1e-15);
}

TEST_CASE("decay report on a small model") {
  const auto s = small_model();
  const auto dirs = default_directions(s.total_spin(), 1, 5);
  DecayOptions o;
  o.ahat_max_radius = 1e3;
  const AsymptoticsReport rep = decay_report(s, dirs, log_radii(1.0, 1e4, 13), o);
  REQUIRE(rep.per_direction.size() == 3);
  CHECK(rep.reference_direction == 1);
  CHECK(std::abs(rep.density_exponent + 5.0) <= 0.2);
  const auto& perp = rep.per_direction[1];
  CHECK(perp.prediction_error <= 0.02);
  CHECK(perp.cosine >= 0.999);
  CHECK(perp.lemma_fit.slope <= -2.7);
  CHECK(std::abs(perp.kappa_measured - rep.kappa_oracle) <= 0.02 * std::abs(rep.kappa_oracle));
  CHECK(rep.per_direction[0].limit_norm <= 0.01 * perp.limit_norm);
  CHECK(rep.samples.size() == 3 * 13);
}
