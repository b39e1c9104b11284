#include "photontail/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "photontail/errors.hpp"
#include "photontail/modes.hpp"
#include "photontail/quadrature.hpp"
#include "photontail/resolvent.hpp"
#include "photontail/rng.hpp"

namespace photontail {

double sphere_kernel(double lambda) {
  // K = -j_1; the closed form cancels badly below |lambda| ~ 1, so sum the series there.
  if (std::abs(lambda) < 1.0) {
    const double l2 = lambda * lambda;
    double term = lambda / 3.0;
    double sum = term;
    for (int k = 0; k < 12; ++k) {
      term *= -l2 / (2.0 * (k + 1) * (2 * k + 5));
      sum += term;
    }
    return -sum;
  }
  return std::cos(lambda) / lambda - std::sin(lambda) / (lambda * lambda);
}

double radial_kernel(double r, double rho) { return sphere_kernel(r * rho); }

CVec3 sphere_integral_reference(const Vec3& v, int m, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("sphere integral needs lambda > 0");
  if (m < 1 || m > 3) throw DomainError("sphere integral: m must be 1..3");
  const Vec3 c = v.cross(Vec3::Unit(m - 1));
  return cplx(0.0, 4.0 * kPi * sphere_kernel(lambda)) * c.cast<cplx>();
}

CVec3 sphere_integral_quadrature(const Vec3& v, int m, double lambda, int n_theta, int n_phi) {
  if (!(lambda > 0.0)) throw DomainError("sphere integral needs lambda > 0");
  if (m < 1 || m > 3) throw DomainError("sphere integral: m must be 1..3");
  const SphereRule rule = product_sphere_rule(n_theta, n_phi);
  const Vec3 em = Vec3::Unit(m - 1);
  CVec3 sum = CVec3::Zero();
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    const Vec3& w = rule.points[i];
    const cplx phase = std::polar(rule.weights[i], -lambda * v.dot(w));
    sum += phase * w.cross(em).cast<cplx>();
  }
  return sum;
}

// ---------------------------------------------------------------------------

StateVector operator_filter(cplx z, const SpectralSurrogate& s, const StateVector& f, double tol) {
  check_shift(z);
  const StateVector& u = s.ground_vector();
  if (const auto& spec = s.ground().spectrum) {
    Eigen::VectorXcd c = spec->vectors.adjoint() * f;
    for (Index i = 0; i < c.size(); ++i)
      c[i] *= filter_factor(i == 0 ? 0.0 : std::max(0.0, spec->values[i] - spec->values[0]), z);
    return spec->vectors * c;
  }
  // z R(z) U = U exactly; solving only for the complement keeps the system
  // well conditioned as z -> 0.
  const cplx p = u.dot(f);
  const StateVector rest = f - p * u;
  return p * u + z * resolvent_apply(s.hamiltonian(), s.energy(), z, rest, tol);
}

bool ProjectionTable::eventually_monotone() const {
  std::size_t i = 1;
  while (i < rows.size() && rows[i].error >= rows[i - 1].error) ++i;
  for (; i < rows.size(); ++i)
    if (rows[i].error > rows[i - 1].error * (1.0 + 1e-9) + 1e-15 * f_norm) return false;
  return true;
}

ProjectionTable projection_limit_check(const SpectralSurrogate& s, const StateVector& f,
                                       const std::vector<cplx>& zs) {
  ProjectionTable t;
  t.f_norm = f.norm();
  const StateVector& u = s.ground_vector();
  const StateVector pf = u.dot(f) * u;
  for (cplx z : zs) t.rows.push_back({z, (operator_filter(z, s, f) - pf).norm()});
  return t;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Spectral data of several right-hand sides concatenated, so one adaptive
// partition serves all of them.
struct Stack {
  std::vector<const SpectralRhs*> parts;
  std::vector<Index> offsets{0};
  Eigen::VectorXd shifts;
  Eigen::VectorXcd coeffs;

  void add(const SpectralRhs& r) {
    parts.push_back(&r);
    offsets.push_back(offsets.back() + r.size());
  }
  void finish() {
    shifts.resize(offsets.back());
    coeffs.resize(offsets.back());
    for (std::size_t p = 0; p < parts.size(); ++p) {
      shifts.segment(offsets[p], parts[p]->size()) = parts[p]->shifts;
      coeffs.segment(offsets[p], parts[p]->size()) = parts[p]->coeffs;
    }
  }
  StateVector expand(std::size_t p, const Eigen::VectorXcd& reduced) const {
    return parts[p]->expand(reduced.segment(offsets[p], parts[p]->size()));
  }
  /// weight * c .* F(z)
  Eigen::VectorXcd filtered(cplx weight, cplx z) const {
    Eigen::VectorXcd out(coeffs.size());
    for (Index i = 0; i < coeffs.size(); ++i) out[i] = weight * coeffs[i] * filter_factor(shifts[i], z);
    return out;
  }
};

Stack particle_stack(const SpectralSurrogate& s, int lambda) {
  Stack st;
  for (int m = 1; m <= 3; ++m) st.add(s.spectral(SpectralSurrogate::rhs_index(lambda, m)));
  st.finish();
  return st;
}

Stack single_stack(const SpectralSurrogate& s, std::size_t rhs) {
  if (rhs >= s.rhs_count()) throw DomainError("radial integral: rhs index out of range");
  Stack st;
  st.add(s.spectral(rhs));
  st.finish();
  return st;
}

// A cheap pass fixes the magnitude, the second refines to rel_tol of it.
template <class F>
Eigen::VectorXcd integrate_two_pass(F&& f, const std::vector<double>& breaks, const RadialOptions& opts,
                                    const char* what, double phase_rate = 0.0) {
  AdaptiveOptions coarse;
  coarse.abs_tol = std::numeric_limits<double>::infinity();
  coarse.max_depth = 0;
  const auto first = integrate_panels(f, std::span<const double>(breaks), coarse);
  AdaptiveOptions fine;
  // Heavy cancellation at large r: nothing below a few ulps of the L1 mass is reachable.
  fine.abs_tol = std::max(opts.rel_tol * first.value.norm(), 1e3 * std::numeric_limits<double>::epsilon() * first.l1);
  fine.max_depth = opts.max_depth;
  fine.phase_rate = phase_rate;
  auto result = integrate_panels(f, std::span<const double>(breaks), fine);
  if (!result.converged && result.error > fine.abs_tol) {
    std::ostringstream msg;
    msg << what << ": radial quadrature did not reach " << fine.abs_tol << " (estimate " << result.error << ")";
    throw NumericalError(msg.str(), result.error, fine.abs_tol);
  }
  return std::move(result.value);
}

// Breaks every half period of the kernel in rho, i.e. at multiples of pi/r.
std::vector<double> rho_panels(double r, double rho_max) {
  std::vector<double> b{0.0};
  const double h = kPi / r;
  const auto n = static_cast<std::size_t>(std::ceil(rho_max / h));
  for (std::size_t k = 1; k < n; ++k) b.push_back(static_cast<double>(k) * h);
  b.push_back(rho_max);
  return b;
}

// rho^{3/2} w(rho) K(r, rho) F(rho) c, integrated over [0, rho_max].
template <class W>
Eigen::VectorXcd rho_integral(const Stack& st, double r, double rho_max, W&& weight, const RadialOptions& opts,
                              const char* what) {
  auto integrand = [&](double rho) {
    return st.filtered(rho * std::sqrt(rho) * weight(rho) * radial_kernel(r, rho), rho);
  };
  return integrate_two_pass(integrand, rho_panels(r, rho_max), opts, what, r);
}

// The model integral I_aux(r) on the deformed contours, both signs at once.
Eigen::VectorXcd contour_integral(const Stack& st, double r, const RadialOptions& opts) {
  if (r < 1.0) {
    throw DomainError("contour path needs |x| >= 1 (got " + std::to_string(r) + "); use the direct path");
  }
  const cplx rot_p = cplx(0.0, 1.0) * std::polar(1.0, kPi / 4.0);
  const cplx rot_m = cplx(0.0, -1.0) * std::polar(1.0, -kPi / 4.0);
  const double scale = std::pow(r, -2.5);
  auto integrand = [&](double s) {
    const double s2 = s * s;
    const double w = (s2 + 1.0) * std::exp(-s2) * scale;
    const cplx zp(0.0, s2 / r);
    const cplx zm(0.0, -s2 / r);
    const cplx ep = rot_p * std::exp(-zp) * w;
    const cplx em = rot_m * std::exp(-zm) * w;
    Eigen::VectorXcd out(st.coeffs.size());
    for (Index i = 0; i < out.size(); ++i)
      out[i] = st.coeffs[i] * (ep * filter_factor(st.shifts[i], zp) + em * filter_factor(st.shifts[i], zm));
    return out;
  };
  const std::vector<double> breaks = {0.0, 1.0, 2.0, 3.5, opts.contour_cut};
  return integrate_two_pass(integrand, breaks, opts, "contour integral");
}

// Same integral in the oscillatory t-form; panels at t_k = sqrt(k pi).
Eigen::VectorXcd t_form_integral(const Stack& st, double r, const RadialOptions& opts) {
  if (!(r > 0.0)) throw DomainError("radial integral needs r > 0");
  const double scale = 2.0 * std::pow(r, -2.5);
  auto integrand = [&](double t) {
    const double u = t * t;
    // u cos u - sin u = u^2 K(u), which avoids the cancellation at small t.
    const double w = scale * u * u * sphere_kernel(u) * std::exp(-u / r);
    return st.filtered(w, cplx(u / r, 0.0));
  };
  const double t_max = std::sqrt(opts.direct_t2_cut * r);
  std::vector<double> breaks{0.0};
  for (int k = 1; std::sqrt(k * kPi) < t_max; ++k) breaks.push_back(std::sqrt(k * kPi));
  breaks.push_back(t_max);
  return integrate_two_pass(integrand, breaks, opts, "direct radial integral", t_max);
}

// sum_m (v x e_m) (x) I_m per spatial axis.
void accumulate_cross(AmplitudeVector& out, const Vec3& v, const std::array<StateVector, 3>& terms, double pre) {
  for (int m = 1; m <= 3; ++m) {
    const Vec3 c = v.cross(Vec3::Unit(m - 1));
    for (int a = 0; a < 3; ++a)
      if (c[a] != 0.0) out.axis[a] += (pre * c[a]) * terms[m - 1];
  }
}

struct Centered {
  Vec3 v;
  double r;
};

Centered center(const Vec3& x, const Vec3& xl) {
  const Vec3 y = x + xl;
  const double r = y.norm();
  if (r == 0.0) throw DomainError("x + x_lambda = 0: the amplitude is not defined at a particle site");
  return {y / r, r};
}

}  // namespace

StateVector radial_integral_contour(const SpectralSurrogate& s, std::size_t rhs, double r, const RadialOptions& opts) {
  const Stack st = single_stack(s, rhs);
  return st.expand(0, contour_integral(st, r, opts));
}

StateVector radial_integral_direct(const SpectralSurrogate& s, std::size_t rhs, double r, const RadialOptions& opts) {
  const Stack st = single_stack(s, rhs);
  return st.expand(0, t_form_integral(st, r, opts));
}

double contour_calibration(const RadialOptions& opts) {
  AdaptiveOptions ao;
  ao.abs_tol = 1e-15;
  ao.max_depth = opts.max_depth;
  const std::vector<double> breaks = {0.0, 1.0, 2.0, 3.5, opts.contour_cut};
  const auto res = integrate_panels([](double s) { return (s * s + 1.0) * std::exp(-s * s); },
                                    std::span<const double>(breaks), ao);
  return res.value;
}

double kappa_oracle(const RadialOptions& opts) {
  cplx rotation = 0.0;
  for (int eps : {1, -1}) rotation += cplx(0.0, eps) * std::polar(1.0, eps * kPi / 4.0);
  return rotation.real() * contour_calibration(opts) / kSqrtPi;
}

AmplitudeVector a_hat(const SpectralSurrogate& s, const Vec3& x, const RadialOptions& opts) {
  AmplitudeVector out = AmplitudeVector::zero(s.dimension());
  if (s.g() == 0.0) return out;
  const CutoffFunction& chi = s.chi();
  const double rho_max = chi.effective_support();
  for (int lambda = 1; lambda <= s.particles(); ++lambda) {
    const Centered c = center(x, s.positions()[lambda - 1]);
    const Stack st = particle_stack(s, lambda);
    const Eigen::VectorXcd red = rho_integral(st, c.r, rho_max, chi, opts, "a_hat");
    accumulate_cross(out, c.v, {st.expand(0, red), st.expand(1, red), st.expand(2, red)}, s.g() / kSqrtPi);
  }
  return out;
}

AmplitudeVector b_field(const SpectralSurrogate& s, const Vec3& x, RadialPath path, const RadialOptions& opts) {
  AmplitudeVector out = AmplitudeVector::zero(s.dimension());
  const double chi0 = s.chi().at_zero();
  if (s.g() == 0.0 || chi0 == 0.0) return out;
  for (int lambda = 1; lambda <= s.particles(); ++lambda) {
    const Centered c = center(x, s.positions()[lambda - 1]);
    const Stack st = particle_stack(s, lambda);
    const Eigen::VectorXcd red =
        path == RadialPath::contour ? contour_integral(st, c.r, opts) : t_form_integral(st, c.r, opts);
    accumulate_cross(out, c.v, {st.expand(0, red), st.expand(1, red), st.expand(2, red)},
                     s.g() * chi0 / kSqrtPi);
  }
  return out;
}

AmplitudeVector lemma_difference(const SpectralSurrogate& s, const Vec3& x, const RadialOptions& opts) {
  AmplitudeVector out = AmplitudeVector::zero(s.dimension());
  if (s.g() == 0.0) return out;
  const CutoffFunction& chi = s.chi();
  const double chi0 = chi.at_zero();
  const double rho_max = std::max(chi.effective_support(), 45.0);
  auto weight = [&](double rho) { return chi(rho) - chi0 * std::exp(-rho); };
  for (int lambda = 1; lambda <= s.particles(); ++lambda) {
    const Centered c = center(x, s.positions()[lambda - 1]);
    const Stack st = particle_stack(s, lambda);
    const Eigen::VectorXcd red = rho_integral(st, c.r, rho_max, weight, opts, "lemma_difference");
    accumulate_cross(out, c.v, {st.expand(0, red), st.expand(1, red), st.expand(2, red)}, s.g() / kSqrtPi);
  }
  return out;
}

namespace {

AmplitudeVector bruteforce_pass(const SpectralSurrogate& s, const Vec3& x, int n_radial, int n_theta, int n_phi) {
  // rho = q^2 takes the rho^{1/2} branch point out of the radial integrand.
  const double q_max = std::sqrt(s.chi().effective_support());
  const Rule1D radial = gauss_legendre(n_radial, 0.0, q_max);
  const SphereRule sphere = product_sphere_rule(n_theta, n_phi);
  AmplitudeVector sum = AmplitudeVector::zero(s.dimension());
  for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
    const double q = radial.nodes[i];
    const double rho = q * q;
    const double wr = radial.weights[i] * 2.0 * q * rho * rho;  // rho^2 drho = 2 q^5 dq
    for (std::size_t j = 0; j < sphere.points.size(); ++j) {
      const Vec3 k = rho * sphere.points[j];
      const cplx w = std::polar(wr * sphere.weights[j], -x.dot(k));
      sum += w * photon_amplitude(s, k);
    }
  }
  return sum;
}

}  // namespace

BruteForceResult a_hat_bruteforce(const SpectralSurrogate& s, const Vec3& x, const BruteForceOptions& opts) {
  if (x.norm() > opts.max_radius) {
    throw DomainError("a_hat_bruteforce: |x| = " + std::to_string(x.norm()) + " exceeds the cost guard " +
                      std::to_string(opts.max_radius));
  }
  BruteForceResult out;
  out.value = bruteforce_pass(s, x, opts.n_radial, opts.n_theta, opts.n_phi);
  if (!opts.refine) return out;
  AmplitudeVector fine = bruteforce_pass(s, x, 2 * opts.n_radial, 2 * opts.n_theta, 2 * opts.n_phi);
  const double scale = fine.norm();
  out.refinement_change = scale > 0.0 ? (fine - out.value).norm() / scale : 0.0;
  out.value = std::move(fine);
  if (out.refinement_change > opts.refine_tol) {
    throw NumericalError("a_hat_bruteforce: grid refinement changed the result by " +
                             std::to_string(out.refinement_change),
                         out.refinement_change, opts.refine_tol);
  }
  return out;
}

AmplitudeVector predicted_limit(const SpectralSurrogate& s, const Vec3& v, double kappa) {
  const Vec3 c = v.cross(s.total_spin());
  const double pre = kappa * s.g() * s.chi().at_zero();
  AmplitudeVector out;
  for (int a = 0; a < 3; ++a) out.axis[a] = (pre * c[a]) * s.ground_vector();
  return out;
}

// ---------------------------------------------------------------------------

LinearFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] >= lo * (1.0 - 1e-12) && x[i] <= hi * (1.0 + 1e-12) && y[i] > 0.0 && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  LinearFit fit;
  fit.points = lx.size();
  if (lx.size() < 2) return fit;
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss += e * e;
  }
  fit.residual_rms = std::sqrt(ss / n);
  fit.slope_stderr = lx.size() > 2 ? std::sqrt(ss / (n - 2.0) / sxx) : 0.0;
  return fit;
}

std::vector<double> log_radii(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw ConfigError("radii need 0 < min < max and count >= 2");
  std::vector<double> r(static_cast<std::size_t>(count));
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int i = 0; i < count; ++i) r[static_cast<std::size_t>(i)] = std::pow(10.0, a + (b - a) * i / (count - 1));
  r.front() = lo;
  r.back() = hi;
  return r;
}

std::vector<Vec3> default_directions(const Vec3& total_spin, int random_count, std::uint64_t seed) {
  std::vector<Vec3> dirs;
  const double s = total_spin.norm();
  const Vec3 par = s > 1e-12 ? Vec3(total_spin / s) : Vec3::UnitZ();
  // Least-aligned axis gives a well-conditioned perpendicular.
  Index axis = 0;
  par.cwiseAbs().minCoeff(&axis);
  const Vec3 perp = par.cross(Vec3::Unit(axis)).normalized();
  dirs.push_back(par);
  dirs.push_back(perp);
  Rng rng(seed);
  for (int i = 0; i < random_count; ++i) dirs.push_back(rng.unit_vector());
  return dirs;
}

namespace {

AmplitudeVector scaled_b(const SpectralSurrogate& s, const Vec3& v, double r, const RadialOptions& opts) {
  AmplitudeVector b = b_field(s, r * v, r >= 1.0 ? RadialPath::contour : RadialPath::direct, opts);
  return std::pow(r, 2.5) * b;
}

}  // namespace

AsymptoticsReport decay_report(const SpectralSurrogate& s, const std::vector<Vec3>& directions,
                               const std::vector<double>& radii, const DecayOptions& opts) {
  if (radii.size() < 2) throw ConfigError("decay report needs at least two radii");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) throw ConfigError("decay report radii must be strictly increasing");
  if (!(radii.front() > 0.0)) throw ConfigError("decay report radii must be positive");

  AsymptoticsReport rep;
  rep.directions = directions;
  rep.radii = radii;
  rep.total_spin = s.total_spin();
  rep.g = s.g();
  rep.chi0 = s.chi().at_zero();
  rep.kappa_oracle = kappa_oracle(opts.radial);
  rep.kappa_used = std::isnan(opts.kappa) ? rep.kappa_oracle : opts.kappa;

  const double r_max = radii.back();
  const double top_lo = r_max / 10.0;
  const StateVector& u = s.ground_vector();

  for (std::size_t d = 0; d < directions.size(); ++d) {
    const Vec3 v = directions[d].normalized();
    DirectionSummary sum;
    sum.v = v;
    sum.cross_norm = v.cross(rep.total_spin).norm();

    std::vector<double> nb, scaled, diff;
    for (double r : radii) {
      DecaySample smp;
      smp.radius = r;
      smp.dir_index = d;
      const AmplitudeVector b =
          b_field(s, r * v, r >= 1.0 ? RadialPath::contour : RadialPath::direct, opts.radial);
      smp.norm_b = b.norm();
      smp.scaled_norm_b = std::pow(r, 2.5) * smp.norm_b;
      double dn = std::numeric_limits<double>::quiet_NaN();
      if (r <= opts.ahat_max_radius * (1.0 + 1e-12)) {
        const AmplitudeVector ah = a_hat(s, r * v, opts.radial);
        smp.norm_ahat = ah.norm();
        dn = (ah - b).norm();
        smp.err_lemma_product = r * r * r * dn;
      }
      nb.push_back(smp.norm_b);
      scaled.push_back(smp.scaled_norm_b);
      diff.push_back(dn);
      sum.sup_scaled = std::max(sum.sup_scaled, smp.scaled_norm_b);
      rep.samples.push_back(smp);
    }
    sum.b_fit = fit_loglog(radii, nb, top_lo, r_max);
    sum.scaled_fit = fit_loglog(radii, scaled, top_lo, r_max);
    sum.lemma_fit = fit_loglog(radii, diff, opts.lemma_lo, opts.lemma_hi);
    sum.asymptotic = sum.b_fit.residual_rms <= opts.fit_residual_limit;

    const AmplitudeVector limit = scaled_b(s, v, r_max, opts.radial);
    sum.limit_norm = limit.norm();
    for (int a = 0; a < 3; ++a) sum.limit_pattern[a] = u.dot(limit.axis[a]);
    const Vec3 c = v.cross(rep.total_spin);
    if (sum.cross_norm > 0.0 && rep.g * rep.chi0 != 0.0) {
      cplx proj = 0.0;
      double pattern_norm = 0.0;
      for (int a = 0; a < 3; ++a) {
        proj += c[a] * sum.limit_pattern[a];
        pattern_norm += std::norm(sum.limit_pattern[a]);
      }
      sum.kappa_measured = proj.real() / (rep.g * rep.chi0 * c.squaredNorm());
      sum.cosine = proj.real() * (rep.kappa_used < 0 ? -1.0 : 1.0) / (std::sqrt(pattern_norm) * c.norm());
    }
    if (sum.limit_norm > 0.0) {
      sum.prediction_error = (limit - predicted_limit(s, v, rep.kappa_used)).norm() / sum.limit_norm;
    }
    if (r_max >= 100.0 * radii.front()) {
      const AmplitudeVector l2 = scaled_b(s, v, r_max / 100.0, opts.radial);
      const AmplitudeVector l1 = scaled_b(s, v, r_max / 10.0, opts.radial);
      sum.limit_steps = {(l1 - l2).norm(), (limit - l1).norm()};
    }
    rep.per_direction.push_back(sum);
  }

  for (std::size_t d = 1; d < rep.per_direction.size(); ++d)
    if (rep.per_direction[d].cross_norm > rep.per_direction[rep.reference_direction].cross_norm)
      rep.reference_direction = d;
  if (!rep.per_direction.empty())
    rep.density_exponent = 2.0 * rep.per_direction[rep.reference_direction].b_fit.slope;
  return rep;
}

}  // namespace photontail
