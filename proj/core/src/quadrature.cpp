#include "photontail/quadrature.hpp"

#include <algorithm>
#include <string>

#include "photontail/errors.hpp"

namespace photontail {

Rule1D gauss_legendre(int n) {
  if (n < 1) throw ConfigError("gauss_legendre: need at least one node, got " + std::to_string(n));
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

Rule1D gauss_legendre(int n, double a, double b) {
  Rule1D rule = gauss_legendre(n);
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = c + h * rule.nodes[i];
    rule.weights[i] *= h;
  }
  return rule;
}

namespace {

void add_a1(SphereRule& r, double w) {
  for (int axis = 0; axis < 3; ++axis)
    for (double s : {1.0, -1.0}) {
      Vec3 p = Vec3::Zero();
      p[axis] = s;
      r.points.push_back(p);
      r.weights.push_back(w);
    }
}

void add_a2(SphereRule& r, double w) {
  const double a = std::sqrt(0.5);
  for (int zero = 0; zero < 3; ++zero)
    for (double s1 : {1.0, -1.0})
      for (double s2 : {1.0, -1.0}) {
        Vec3 p;
        p[zero] = 0.0;
        p[(zero + 1) % 3] = s1 * a;
        p[(zero + 2) % 3] = s2 * a;
        r.points.push_back(p);
        r.weights.push_back(w);
      }
}

void add_a3(SphereRule& r, double w) {
  const double a = std::sqrt(1.0 / 3.0);
  for (double sx : {1.0, -1.0})
    for (double sy : {1.0, -1.0})
      for (double sz : {1.0, -1.0}) {
        r.points.emplace_back(sx * a, sy * a, sz * a);
        r.weights.push_back(w);
      }
}

// (l, l, m) with m at each of the three positions and all sign patterns.
void add_b(SphereRule& r, double l, double w) {
  const double m = std::sqrt(1.0 - 2.0 * l * l);
  for (int pos = 0; pos < 3; ++pos)
    for (double s0 : {1.0, -1.0})
      for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0}) {
          Vec3 p;
          p[pos] = s0 * m;
          p[(pos + 1) % 3] = s1 * l;
          p[(pos + 2) % 3] = s2 * l;
          r.points.push_back(p);
          r.weights.push_back(w);
        }
}

// (p, q, 0) and (q, p, 0) in each coordinate plane, all sign patterns.
void add_c(SphereRule& r, double p, double w) {
  const double q = std::sqrt(1.0 - p * p);
  for (int zero = 0; zero < 3; ++zero)
    for (int swap = 0; swap < 2; ++swap)
      for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0}) {
          Vec3 v;
          v[zero] = 0.0;
          v[(zero + 1) % 3] = s1 * (swap ? q : p);
          v[(zero + 2) % 3] = s2 * (swap ? p : q);
          r.points.push_back(v);
          r.weights.push_back(w);
        }
}

}  // namespace

bool is_supported_lebedev(int points) {
  return points == 6 || points == 14 || points == 26 || points == 38 || points == 50;
}

SphereRule lebedev_rule(int points) {
  SphereRule r;
  switch (points) {
    case 6:
      add_a1(r, 1.0 / 6.0);
      r.degree = 3;
      break;
    case 14:
      add_a1(r, 1.0 / 15.0);
      add_a3(r, 3.0 / 40.0);
      r.degree = 5;
      break;
    case 26:
      add_a1(r, 1.0 / 21.0);
      add_a2(r, 4.0 / 105.0);
      add_a3(r, 9.0 / 280.0);
      r.degree = 7;
      break;
    case 38:
      add_a1(r, 1.0 / 105.0);
      add_a3(r, 9.0 / 280.0);
      add_c(r, 0.4597008433809831, 1.0 / 35.0);
      r.degree = 9;
      break;
    case 50:
      add_a1(r, 4.0 / 315.0);
      add_a2(r, 64.0 / 2835.0);
      add_a3(r, 27.0 / 1280.0);
      add_b(r, std::sqrt(1.0 / 11.0), 14641.0 / 725760.0);
      r.degree = 11;
      break;
    default:
      throw ConfigError("unsupported angular order " + std::to_string(points) +
                        " (supported: 6, 14, 26, 38, 50)");
  }
  for (double& w : r.weights) w *= 4.0 * kPi;
  return r;
}

SphereRule product_sphere_rule(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1)
    throw ConfigError("product_sphere_rule: node counts must be positive");
  const Rule1D gl = gauss_legendre(n_theta);
  SphereRule r;
  r.points.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  r.weights.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  const double dphi = 2.0 * kPi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double ct = gl.nodes[i];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = (j + 0.5) * dphi;
      r.points.emplace_back(st * std::cos(phi), st * std::sin(phi), ct);
      r.weights.push_back(gl.weights[i] * dphi);
    }
  }
  r.degree = std::min(2 * n_theta - 1, n_phi - 1);
  return r;
}

}  // namespace photontail
