#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "photontail/pullthrough.hpp"
#include "photontail/surrogate.hpp"
#include "photontail/types.hpp"

namespace photontail {

// ---------------------------------------------------------------------------
// Sphere reduction

/// cos(l)/l - sin(l)/l^2, with a Taylor branch near 0.
double sphere_kernel(double lambda);
/// K(r, rho) = sphere_kernel(r * rho).
double radial_kernel(double r, double rho);

/// 4 i pi (v x e_m) sphere_kernel(lambda).
CVec3 sphere_integral_reference(const Vec3& v, int m, double lambda);
/// int_{S^2} exp(-i lambda v.w) (w x e_m) dmu(w) on a product sphere rule.
CVec3 sphere_integral_quadrature(const Vec3& v, int m, double lambda, int n_theta = 64, int n_phi = 128);

// ---------------------------------------------------------------------------
// Resolvent filter F(z) = z (H - E + z)^{-1}

StateVector operator_filter(cplx z, const SpectralSurrogate& s, const StateVector& f, double tol = 1e-10);

struct ProjectionRow {
  cplx z;
  double error;  // ||F(z) f - <U, f> U||
};

struct ProjectionTable {
  std::vector<ProjectionRow> rows;
  double f_norm = 0.0;
  double final_error() const { return rows.empty() ? 0.0 : rows.back().error; }
  /// True when the errors never increase from the first decrease on.
  bool eventually_monotone() const;
};

ProjectionTable projection_limit_check(const SpectralSurrogate& s, const StateVector& f,
                                       const std::vector<cplx>& zs);

// ---------------------------------------------------------------------------
// Radial integrals

struct RadialOptions {
  double rel_tol = 1e-12;
  int max_depth = 30;
  double contour_cut = 7.0;   // the deformed integrand carries exp(-s^2)
  double direct_t2_cut = 40.0;  // t-form truncated at t^2 = cut * r
};

/// Model radial integral with chi replaced by exp(-rho):
/// int_0^inf rho^{3/2} e^{-rho} K(r, rho) F(rho) f drho for f = f(rhs), from the
/// deformed contour in the sum over eps = +-. Requires r >= 1.
StateVector radial_integral_contour(const SpectralSurrogate& s, std::size_t rhs, double r,
                                    const RadialOptions& opts = {});
/// Same integral, oscillatory t-form 2 r^{-5/2} int (t^2 cos t^2 - sin t^2) e^{-t^2/r} F(t^2/r) f dt.
StateVector radial_integral_direct(const SpectralSurrogate& s, std::size_t rhs, double r,
                                   const RadialOptions& opts = {});

/// int_0^inf (s^2 + 1) exp(-s^2) ds on the rule used by the contour path.
double contour_calibration(const RadialOptions& opts = {});

/// Limit constant from the contour form:
/// Re(sum_eps eps i e^{eps i pi/4}) * int (s^2+1)e^{-s^2} / sqrt(pi) = -3 sqrt(2)/4.
double kappa_oracle(const RadialOptions& opts = {});
/// Magnitudes of the two candidate constants quoted alongside the measurement.
inline constexpr double kKappaQuoted = 2.1213203435596424;    // 3/sqrt(2)
inline constexpr double kKappaDerived = 1.0606601717798212;  // 3 sqrt(2)/4

// ---------------------------------------------------------------------------
// Position-space amplitudes

/// (a-hat(x) (x) I) U via the sphere reduction and adaptive radial panels.
AmplitudeVector a_hat(const SpectralSurrogate& s, const Vec3& x, const RadialOptions& opts = {});

enum class RadialPath { contour, direct };

/// Same reduction with chi(rho) replaced by chi(0) exp(-rho).
AmplitudeVector b_field(const SpectralSurrogate& s, const Vec3& x, RadialPath path = RadialPath::contour,
                        const RadialOptions& opts = {});

/// a-hat(x) U - b(x) U from a single radial integral with kernel
/// chi(rho) - chi(0) exp(-rho).
AmplitudeVector lemma_difference(const SpectralSurrogate& s, const Vec3& x, const RadialOptions& opts = {});

struct BruteForceOptions {
  int n_radial = 64;
  int n_theta = 64;
  int n_phi = 128;
  double max_radius = 10.0;  // cost guard on |x|
  bool refine = true;        // repeat with every count doubled
  double refine_tol = 1e-4;
};

struct BruteForceResult {
  AmplitudeVector value;
  double refinement_change = 0.0;  // relative, 0 when refine is off
};

/// int e^{-i x.k} a(k) U dk on a spherical product grid, with photon_amplitude
/// at every node. Throws NumericalError when refinement moves the result by
/// more than refine_tol.
BruteForceResult a_hat_bruteforce(const SpectralSurrogate& s, const Vec3& x, const BruteForceOptions& opts = {});

/// kappa g chi(0) (v x S_tot) (x) U.
AmplitudeVector predicted_limit(const SpectralSurrogate& s, const Vec3& v, double kappa);

// ---------------------------------------------------------------------------
// Decay report

struct LinearFit {
  double slope = std::numeric_limits<double>::quiet_NaN();
  double intercept = std::numeric_limits<double>::quiet_NaN();
  double slope_stderr = std::numeric_limits<double>::quiet_NaN();
  double residual_rms = std::numeric_limits<double>::quiet_NaN();
  std::size_t points = 0;
};

/// Least squares of log y on log x over samples with lo <= x <= hi and y > 0.
LinearFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi);

/// Log-spaced radii from lo to hi inclusive.
std::vector<double> log_radii(double lo, double hi, int count);

/// v || S, v perp S, then `random_count` seeded random unit vectors.
std::vector<Vec3> default_directions(const Vec3& total_spin, int random_count, std::uint64_t seed);

struct DecayOptions {
  double ahat_max_radius = 1e3;
  double kappa = std::numeric_limits<double>::quiet_NaN();  // NaN: use kappa_oracle()
  double lemma_lo = 10.0;
  double lemma_hi = 1e3;
  double fit_residual_limit = 0.05;
  RadialOptions radial{};
};

struct DecaySample {
  double radius = 0.0;
  std::size_t dir_index = 0;
  double norm_ahat = std::numeric_limits<double>::quiet_NaN();
  double norm_b = 0.0;
  double scaled_norm_b = 0.0;  // |x|^{5/2} ||b(x) U||
  double err_lemma_product = std::numeric_limits<double>::quiet_NaN();  // |x|^3 ||a-hat - b||
};

struct DirectionSummary {
  Vec3 v = Vec3::Zero();
  double cross_norm = 0.0;  // |v x S_tot|
  LinearFit b_fit;          // log ||b|| over the top decade
  LinearFit scaled_fit;     // log |x|^{5/2} ||b|| over the top decade
  LinearFit lemma_fit;      // log ||a-hat - b|| over [lemma_lo, lemma_hi]
  double sup_scaled = 0.0;
  double limit_norm = 0.0;  // ||L_est||
  std::array<cplx, 3> limit_pattern{};  // <U, L_est,a>
  double kappa_measured = std::numeric_limits<double>::quiet_NaN();
  double cosine = std::numeric_limits<double>::quiet_NaN();
  double prediction_error = std::numeric_limits<double>::quiet_NaN();  // ||L - pred|| / ||L||
  /// ||L(r/100) - L(r/10)|| and ||L(r/10) - L(r)|| at the largest radius.
  std::array<double, 2> limit_steps{};
  bool asymptotic = true;
};

struct AsymptoticsReport {
  std::vector<Vec3> directions;
  std::vector<double> radii;
  std::vector<DecaySample> samples;
  std::vector<DirectionSummary> per_direction;
  Vec3 total_spin = Vec3::Zero();
  double g = 0.0;
  double chi0 = 0.0;
  double kappa_used = 0.0;
  double kappa_oracle = 0.0;
  double kappa_quoted = kKappaQuoted;
  double kappa_derived = kKappaDerived;
  /// Direction with the largest |v x S|; carries the headline exponents.
  std::size_t reference_direction = 0;
  double density_exponent = std::numeric_limits<double>::quiet_NaN();  // 2 * b_fit.slope
};

AsymptoticsReport decay_report(const SpectralSurrogate& s, const std::vector<Vec3>& directions,
                               const std::vector<double>& radii, const DecayOptions& opts = {});

}  // namespace photontail
