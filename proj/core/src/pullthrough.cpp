#include "photontail/pullthrough.hpp"

#include <cmath>
#include <string>

#include "photontail/errors.hpp"
#include "photontail/fock.hpp"
#include "photontail/modes.hpp"

namespace photontail {

AmplitudeVector AmplitudeVector::zero(Index dim) {
  AmplitudeVector a;
  for (auto& v : a.axis) v = StateVector::Zero(dim);
  return a;
}

double AmplitudeVector::norm_squared() const {
  double s = 0.0;
  for (const auto& v : axis) s += v.squaredNorm();
  return s;
}

double AmplitudeVector::norm() const { return std::sqrt(norm_squared()); }

StateVector AmplitudeVector::contract(const Vec3& k) const { return k[0] * axis[0] + k[1] * axis[1] + k[2] * axis[2]; }

AmplitudeVector& AmplitudeVector::operator+=(const AmplitudeVector& o) {
  for (int a = 0; a < 3; ++a) axis[a] += o.axis[a];
  return *this;
}

AmplitudeVector& AmplitudeVector::operator-=(const AmplitudeVector& o) {
  for (int a = 0; a < 3; ++a) axis[a] -= o.axis[a];
  return *this;
}

AmplitudeVector& AmplitudeVector::operator*=(cplx s) {
  for (auto& v : axis) v *= s;
  return *this;
}

AmplitudeVector operator-(AmplitudeVector a, const AmplitudeVector& b) { return a -= b; }
AmplitudeVector operator*(cplx s, AmplitudeVector a) { return a *= s; }

AmplitudeVector photon_amplitude(const SpectralSurrogate& s, const Vec3& k) {
  const double rho = k.norm();
  if (rho == 0.0) throw DomainError("photon_amplitude: k = 0 is excluded");
  AmplitudeVector out = AmplitudeVector::zero(s.dimension());
  if (s.g() == 0.0) return out;
  const auto solved = s.resolved(rho);
  const double pre = -s.g() / std::sqrt(2.0);
  for (int lambda = 1; lambda <= s.particles(); ++lambda) {
    for (int m = 1; m <= 3; ++m) {
      const CVec3 b = field_coefficient(m, s.positions()[lambda - 1], k, s.chi());
      const StateVector& y = (*solved)[SpectralSurrogate::rhs_index(lambda, m)];
      for (int a = 0; a < 3; ++a)
        if (b[a] != cplx(0.0)) out.axis[a] += (pre * b[a]) * y;
    }
  }
  return out;
}

double amplitude_bound(const SpectralSurrogate& s, const Vec3& k) {
  const double rho = k.norm();
  if (rho == 0.0) throw DomainError("amplitude_bound: k = 0 is excluded");
  double sum = 0.0;
  for (int lambda = 1; lambda <= s.particles(); ++lambda)
    for (int m = 1; m <= 3; ++m) sum += field_coefficient(m, s.positions()[lambda - 1], k, s.chi()).norm();
  return s.g() / std::sqrt(2.0) * sum / rho;
}

double pullthrough_residual(const SpectralSurrogate& s, std::size_t slot) {
  const auto& model = s.model();
  if (!model) throw DomainError("pullthrough_residual needs a surrogate built from an assembled model");
  if (slot >= model->basis.slot_count())
    throw DomainError("pullthrough_residual: slot " + std::to_string(slot) + " out of range");
  const double omega = model->grid[slot / 2].omega;
  StateVector r = ladder(model->basis, slot, Ladder::annihilate, s.ground_vector());
  if (s.g() == 0.0) return r.norm();
  const auto solved = s.resolved(omega);
  const double pre = s.g() / std::sqrt(2.0);
  for (int lambda = 1; lambda <= s.particles(); ++lambda) {
    for (int m = 1; m <= 3; ++m) {
      const cplx c = model->couplings[AssembledModel::coupling_index(lambda, m)][static_cast<Index>(slot)];
      r += (pre * c) * (*solved)[SpectralSurrogate::rhs_index(lambda, m)];
    }
  }
  return r.norm();
}

double pullthrough_residual_total(const SpectralSurrogate& s) {
  if (!s.model()) throw DomainError("pullthrough_residual needs a surrogate built from an assembled model");
  double sum = 0.0;
  for (std::size_t j = 0; j < s.model()->basis.slot_count(); ++j) {
    const double r = pullthrough_residual(s, j);
    sum += r * r;
  }
  return std::sqrt(sum);
}

bool NumberCheck::holds(double rel) const { return std::abs(lhs - rhs) <= rel * (1.0 + rhs); }

NumberCheck number_check(const FockBasis& basis, const StateVector& u) {
  NumberCheck out;
  for (std::size_t j = 0; j < basis.slot_count(); ++j)
    out.lhs += ladder(basis, j, Ladder::annihilate, u).squaredNorm();
  const Index sd = u.size() / static_cast<Index>(basis.size());
  const SparseMatrix n = kron_identity(number_operator(basis).matrix, sd);
  out.rhs = u.dot(n * u).real();
  return out;
}

NumberCheck number_check(const SpectralSurrogate& s) {
  if (!s.model()) throw DomainError("number_check needs a surrogate built from an assembled model");
  return number_check(s.model()->basis, s.ground_vector());
}

}  // namespace photontail
