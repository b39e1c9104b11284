#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "photontail/types.hpp"

namespace photontail {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
Rule1D gauss_legendre(int n);

/// n-point Gauss-Legendre rule mapped to [a, b].
Rule1D gauss_legendre(int n, double a, double b);

/// Quadrature rule on the unit sphere; weights sum to 4*pi.
struct SphereRule {
  std::vector<Vec3> points;
  std::vector<double> weights;
  int degree = 0;  // exact for spherical polynomials up to this degree
};

/// Lebedev rules with 6, 14, 26, 38 or 50 points (degrees 3, 5, 7, 9, 11).
SphereRule lebedev_rule(int points);
bool is_supported_lebedev(int points);

/// Gauss-Legendre in cos(theta) times the trapezoid rule in phi.
SphereRule product_sphere_rule(int n_theta, int n_phi);

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod (7/15) for scalar or Eigen-vector valued integrands.

template <class T>
struct Integral {
  T value;
  double error = 0.0;
  std::size_t evaluations = 0;
  double l1 = 0.0;  // integral of |f|, for round-off floors
  bool converged = true;
};

struct AdaptiveOptions {
  double abs_tol = 1e-12;
  int max_depth = 40;
  // Oscillatory integrands cos(phase_rate * x) carry argument round-off of
  // eps * phase_rate * |x| relative to their size; the floor grows with it.
  double phase_rate = 0.0;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(cplx v) { return std::abs(v); }
template <class Derived>
double magnitude(const Eigen::MatrixBase<Derived>& v) {
  return v.norm();
}

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Gk15 {
  T kronrod;
  double error;
  double l1;
};

template <class F, class T = std::decay_t<std::invoke_result_t<F&, double>>>
Gk15<T> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T fc = f(c);
  T res_k = fc * kKronrodWeights[7];
  T res_g = fc * kGaussWeights[3];
  double l1 = kKronrodWeights[7] * magnitude(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kKronrodNodes[j];
    T f1 = f(c - dx);
    T f2 = f(c + dx);
    l1 += kKronrodWeights[j] * (magnitude(f1) + magnitude(f2));
    T sum = f1 + f2;
    res_k += sum * kKronrodWeights[j];
    if (j % 2 == 1) res_g += sum * kGaussWeights[j / 2];
  }
  res_k *= h;
  res_g *= h;
  const double err = magnitude(T(res_k - res_g));
  return {std::move(res_k), err, l1 * std::abs(h)};
}

}  // namespace detail

/// Integrates f over [a, b] with local bisection until the summed error
/// estimate is below opts.abs_tol (or the round-off floor of each interval).
template <class F, class T = std::decay_t<std::invoke_result_t<F&, double>>>
Integral<T> integrate_adaptive(F&& f, double a, double b, const AdaptiveOptions& opts) {
  struct Pending {
    double lo, hi;
    int depth;
  };
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double length = b - a;
  Integral<T> out{};
  bool initialised = false;
  std::vector<Pending> stack{{a, b, 0}};
  while (!stack.empty()) {
    const Pending seg = stack.back();
    stack.pop_back();
    auto est = detail::gk15(f, seg.lo, seg.hi);
    out.evaluations += 15;
    const double share = length != 0.0 ? (seg.hi - seg.lo) / length : 1.0;
    const double noise = 1.0 + opts.phase_rate * std::max(std::abs(seg.lo), std::abs(seg.hi));
    const double tol = std::max(opts.abs_tol * share, 50.0 * kEps * noise * est.l1);
    if (est.error <= tol || seg.depth >= opts.max_depth) {
      if (est.error > tol) out.converged = false;
      if (!initialised) {
        out.value = std::move(est.kronrod);
        initialised = true;
      } else {
        out.value += est.kronrod;
      }
      out.error += est.error;
      out.l1 += est.l1;
      continue;
    }
    const double mid = 0.5 * (seg.lo + seg.hi);
    stack.push_back({mid, seg.hi, seg.depth + 1});
    stack.push_back({seg.lo, mid, seg.depth + 1});
  }
  return out;
}

/// Adaptive integration over consecutive panels [p0,p1], [p1,p2], ...; the
/// tolerance is shared among panels in proportion to their length.
template <class F, class T = std::decay_t<std::invoke_result_t<F&, double>>>
Integral<T> integrate_panels(F&& f, std::span<const double> breaks, const AdaptiveOptions& opts) {
  Integral<T> out{};
  const double total = breaks.back() - breaks.front();
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    AdaptiveOptions local = opts;
    local.abs_tol = opts.abs_tol * (breaks[i + 1] - breaks[i]) / total;
    auto part = integrate_adaptive(f, breaks[i], breaks[i + 1], local);
    if (i == 0) {
      out.value = std::move(part.value);
    } else {
      out.value += part.value;
    }
    out.error += part.error;
    out.l1 += part.l1;
    out.evaluations += part.evaluations;
    out.converged = out.converged && part.converged;
  }
  return out;
}

}  // namespace photontail
