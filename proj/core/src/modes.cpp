#include "photontail/modes.hpp"

#include <cmath>

#include "photontail/errors.hpp"
#include "photontail/quadrature.hpp"

namespace photontail {

double CutoffFunction::operator()(double rho) const {
  switch (family) {
    case Family::gaussian:
      return amplitude * std::exp(-(rho * rho) / (scale * scale));
    case Family::exponential:
      return amplitude * std::exp(-rho / scale);
  }
  return 0.0;
}

double CutoffFunction::effective_support() const {
  switch (family) {
    case Family::gaussian:
      return scale * std::sqrt(45.0);
    case Family::exponential:
      return scale * 50.0;
  }
  return 0.0;
}

std::string to_string(CutoffFunction::Family family) {
  return family == CutoffFunction::Family::gaussian ? "gaussian" : "exponential";
}

CutoffFunction::Family parse_cutoff_family(const std::string& name) {
  if (name == "gaussian") return CutoffFunction::Family::gaussian;
  if (name == "exponential") return CutoffFunction::Family::exponential;
  throw ConfigError("unknown cutoff family '" + name + "' (expected gaussian or exponential)");
}

std::vector<double> ModeGrid::slot_frequencies() const {
  std::vector<double> out;
  out.reserve(slot_count());
  for (const auto& n : nodes_) {
    out.push_back(n.omega);
    out.push_back(n.omega);
  }
  return out;
}

double ModeGrid::weight_sum() const {
  double s = 0.0;
  for (const auto& n : nodes_) s += n.weight;
  return s;
}

std::array<Vec3, 2> polarization_frame(const Vec3& k, const PolarizationRule& rule) {
  const double norm = k.norm();
  if (!(norm > 0.0)) throw DomainError("polarization_frame: k = 0 has no transverse frame");
  const Vec3 khat = k / norm;
  const Vec3& axis = std::abs(khat.dot(rule.primary.normalized())) > rule.switch_threshold
                         ? rule.fallback
                         : rule.primary;
  const Vec3 e1 = axis.cross(khat).normalized();
  const Vec3 e2 = khat.cross(e1);
  return {e1, e2};
}

ModeGrid build_mode_grid(int n_radial, int angular_order, double k_max,
                         const PolarizationRule& rule) {
  if (n_radial < 1) throw ConfigError("modes.n_radial must be >= 1");
  if (!(k_max > 0.0)) throw ConfigError("modes.k_max must be > 0");
  if (!is_supported_lebedev(angular_order))
    throw ConfigError("unsupported modes.angular_order " + std::to_string(angular_order) +
                      " (supported: 6, 14, 26, 38, 50)");
  const Rule1D radial = gauss_legendre(n_radial, 0.0, k_max);
  const SphereRule sphere = lebedev_rule(angular_order);

  std::vector<ModeNode> nodes;
  nodes.reserve(radial.nodes.size() * sphere.points.size());
  for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
    const double rho = radial.nodes[i];
    const double wr = radial.weights[i] * rho * rho;
    for (std::size_t a = 0; a < sphere.points.size(); ++a) {
      ModeNode node;
      node.k = rho * sphere.points[a];
      node.weight = wr * sphere.weights[a];
      node.omega = rho;
      node.pol = polarization_frame(node.k, rule);
      nodes.push_back(node);
    }
  }
  return ModeGrid(std::move(nodes));
}

Vec3 transverse_project(const Vec3& k, const Vec3& f) {
  const double k2 = k.squaredNorm();
  if (!(k2 > 0.0)) throw DomainError("transverse_project: k = 0");
  return f - k * (f.dot(k) / k2);
}

CVec3 field_coefficient(int m, const Vec3& x, const Vec3& k, const CutoffFunction& chi) {
  if (m < 1 || m > 3) throw DomainError("field_coefficient: axis index must be 1..3");
  const double rho = k.norm();
  if (!(rho > 0.0)) throw DomainError("field_coefficient: k = 0 is excluded");
  static const double inv_norm = std::pow(2.0 * kPi, -1.5);
  const Vec3 cross = k.cross(Vec3::Unit(m - 1)) / rho;
  const cplx phase = std::polar(1.0, -k.dot(x));
  const cplx scalar = cplx(0.0, 1.0) * (chi(rho) * std::sqrt(rho) * inv_norm) * phase;
  return scalar * cross.cast<cplx>();
}

OnePhotonVector embed_field(int m, const Vec3& x, const ModeGrid& grid, const CutoffFunction& chi) {
  OnePhotonVector c(static_cast<Index>(grid.slot_count()));
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const ModeNode& node = grid[j];
    const CVec3 b = field_coefficient(m, x, node.k, chi);
    const double sw = std::sqrt(node.weight);
    for (int s = 0; s < 2; ++s) {
      c[static_cast<Index>(2 * j + s)] = sw * node.pol[s].cast<cplx>().dot(b);
    }
  }
  return c;
}

}  // namespace photontail
