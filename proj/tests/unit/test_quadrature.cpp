#include <doctest.h>

#include <cmath>

#include "photontail/errors.hpp"
#include "photontail/quadrature.hpp"

using namespace photontail;

namespace {

// Closed form for the sphere moments of x^a y^b z^c.
double sphere_moment(int a, int b, int c) {
  if (a % 2 || b % 2 || c % 2) return 0.0;
  return 2.0 * std::tgamma((a + 1) / 2.0) * std::tgamma((b + 1) / 2.0) * std::tgamma((c + 1) / 2.0) /
         std::tgamma((a + b + c + 3) / 2.0);
}

double worst_moment_error(const SphereRule& rule, int degree) {
  double worst = 0.0;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b)
      for (int c = 0; a + b + c <= degree; ++c) {
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.points.size(); ++i) {
          const Vec3& p = rule.points[i];
          sum += rule.weights[i] * std::pow(p.x(), a) * std::pow(p.y(), b) * std::pow(p.z(), c);
        }
        worst = std::max(worst, std::abs(sum - sphere_moment(a, b, c)));
      }
  return worst;
}

}  // namespace

TEST_CASE("gauss-legendre integrates polynomials up to degree 2n-1") {
  for (int n : {1, 2, 5, 12, 40}) {
    const Rule1D r = gauss_legendre(n);
    double wsum = 0.0;
    for (double w : r.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    const int deg = 2 * n - 1;
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], deg - 1);
    const double exact = (deg - 1) % 2 == 0 ? 2.0 / deg : 0.0;
    CHECK(std::abs(s - exact) < 1e-13);
  }
}

TEST_CASE("gauss-legendre on an interval") {
  const Rule1D r = gauss_legendre(8, 0.0, 3.0);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    CHECK(r.nodes[i] > 0.0);
    CHECK(r.nodes[i] < 3.0);
    s += r.weights[i] * r.nodes[i] * r.nodes[i];
  }
  CHECK(s == doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("lebedev rules reproduce sphere moments to their degree") {
  for (int pts : {6, 14, 26, 38, 50}) {
    CAPTURE(pts);
    REQUIRE(is_supported_lebedev(pts));
    const SphereRule rule = lebedev_rule(pts);
    CHECK(rule.points.size() == static_cast<std::size_t>(pts));
    for (const Vec3& p : rule.points) CHECK(std::abs(p.norm() - 1.0) < 1e-14);
    CHECK(worst_moment_error(rule, rule.degree) < 1e-13);
  }
  CHECK_FALSE(is_supported_lebedev(7));
  CHECK_THROWS(lebedev_rule(7));
}

TEST_CASE("product sphere rule") {
  const SphereRule rule = product_sphere_rule(16, 32);
  CHECK(worst_moment_error(rule, 12) < 1e-13);
}

TEST_CASE("adaptive gauss-kronrod, scalar and vector valued") {
  AdaptiveOptions o;
  o.abs_tol = 1e-13;
  const auto s = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, kPi, o);
  CHECK(s.converged);
  CHECK(std::abs(s.value - 2.0) < 1e-13);

  // sqrt has an endpoint singularity in its derivative
  const auto q = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, o);
  CHECK(std::abs(q.value - 2.0 / 3.0) < 1e-12);

  const auto v = integrate_adaptive(
      [](double x) {
        Eigen::VectorXcd out(2);
        out << std::exp(-x), cplx(0.0, x * x);
        return out;
      },
      0.0, 2.0, o);
  CHECK(std::abs(v.value[0] - (1.0 - std::exp(-2.0))) < 1e-13);
  CHECK(std::abs(v.value[1] - cplx(0.0, 8.0 / 3.0)) < 1e-13);

  const std::vector<double> breaks = {0.0, 0.5, 1.0, 4.0};
  const auto p = integrate_panels([](double x) { return std::exp(-x * x); }, std::span<const double>(breaks), o);
  CHECK(std::abs(p.value - 0.5 * std::sqrt(kPi) * std::erf(4.0)) < 1e-13);
  CHECK(p.l1 == doctest::Approx(p.value).epsilon(1e-12));
}
