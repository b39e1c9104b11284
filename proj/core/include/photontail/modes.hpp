#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "photontail/types.hpp"

namespace photontail {

/// Ultraviolet cutoff chi(rho). Gaussian: chi0 exp(-rho^2 / scale^2);
/// exponential: chi0 exp(-rho / scale).
struct CutoffFunction {
  enum class Family { gaussian, exponential };

  Family family = Family::gaussian;
  double amplitude = 1.0;
  double scale = 1.0;

  double operator()(double rho) const;
  double at_zero() const { return amplitude; }

  /// Radius beyond which rho^p chi(rho) is negligible (< 1e-18 relative) for
  /// the small powers p used by the radial integrals.
  double effective_support() const;
};

std::string to_string(CutoffFunction::Family family);
CutoffFunction::Family parse_cutoff_family(const std::string& name);

/// How the transverse frame (eps1, eps2) is chosen at each k. eps1 is
/// normalize(axis x k) with `axis = primary` unless |k_hat . primary| exceeds
/// `switch_threshold`, in which case `fallback` is used; eps2 = k_hat x eps1.
/// Any rule spans the same transverse plane, so physics cannot depend on it.
struct PolarizationRule {
  Vec3 primary = Vec3::UnitZ();
  Vec3 fallback = Vec3::UnitX();
  double switch_threshold = 0.9;
};

struct ModeNode {
  Vec3 k;
  double weight;  // 3D quadrature weight, includes the rho^2 Jacobian
  double omega;   // |k|
  std::array<Vec3, 2> pol;
};

/// Discretized transverse one-photon space: Gauss-Legendre radial shells on
/// (0, k_max] times a Lebedev sphere rule. Slot 2*j + s is (node j, pol s).
class ModeGrid {
 public:
  ModeGrid() = default;
  explicit ModeGrid(std::vector<ModeNode> nodes) : nodes_(std::move(nodes)) {}

  std::size_t size() const { return nodes_.size(); }
  std::size_t slot_count() const { return 2 * nodes_.size(); }
  const ModeNode& operator[](std::size_t j) const { return nodes_[j]; }
  const std::vector<ModeNode>& nodes() const { return nodes_; }

  /// Photon energy of each slot (omega of its node, repeated per polarization).
  std::vector<double> slot_frequencies() const;
  double weight_sum() const;

 private:
  std::vector<ModeNode> nodes_;
};

struct GridSpec {
  int n_radial = 6;
  int angular_order = 6;
  double k_max = 6.0;
};

ModeGrid build_mode_grid(int n_radial, int angular_order, double k_max,
                         const PolarizationRule& rule = {});
inline ModeGrid build_mode_grid(const GridSpec& spec, const PolarizationRule& rule = {}) {
  return build_mode_grid(spec.n_radial, spec.angular_order, spec.k_max, rule);
}

/// Transverse frame for a single nonzero k.
std::array<Vec3, 2> polarization_frame(const Vec3& k, const PolarizationRule& rule = {});

/// f - k (f.k) / |k|^2.
Vec3 transverse_project(const Vec3& k, const Vec3& f);

/// B_{m,x}(k) = i chi(|k|) |k|^{1/2} (2 pi)^{-3/2} exp(-i k.x) (k x e_m) / |k|,
/// with m in 1..3.
CVec3 field_coefficient(int m, const Vec3& x, const Vec3& k, const CutoffFunction& chi);

/// Coefficients c_{j,s} over the slots of a grid.
using OnePhotonVector = Eigen::VectorXcd;

/// c_{j,s} = sqrt(w_j) eps_{j,s} . B_{m,x}(k_j).
OnePhotonVector embed_field(int m, const Vec3& x, const ModeGrid& grid, const CutoffFunction& chi);

}  // namespace photontail
