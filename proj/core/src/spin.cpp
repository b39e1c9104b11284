#include "photontail/spin.hpp"

#include <cmath>
#include <string>

#include "photontail/errors.hpp"

namespace photontail {

Eigen::Matrix2cd pauli(int m) {
  Eigen::Matrix2cd s;
  switch (m) {
    case 1:
      s << 0.0, 1.0, 1.0, 0.0;
      break;
    case 2:
      s << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
      break;
    case 3:
      s << 1.0, 0.0, 0.0, -1.0;
      break;
    default:
      throw DomainError("pauli: index must be 1..3, got " + std::to_string(m));
  }
  return s;
}

SpinOperator sigma_op(int m, int lambda, int particles) {
  if (particles < 1 || particles > 20) throw DomainError("sigma_op: particle count must be 1..20");
  if (lambda < 1 || lambda > particles)
    throw DomainError("sigma_op: particle index " + std::to_string(lambda) + " outside 1.." +
                      std::to_string(particles));
  const Eigen::Matrix2cd s = pauli(m);
  const Index left = Index{1} << (lambda - 1);
  const Index right = Index{1} << (particles - lambda);
  const Index dim = left * 2 * right;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (Index l = 0; l < left; ++l)
    for (Index a = 0; a < 2; ++a)
      for (Index b = 0; b < 2; ++b) {
        if (s(a, b) == cplx(0.0)) continue;
        for (Index r = 0; r < right; ++r) {
          out((l * 2 + a) * right + r, (l * 2 + b) * right + r) = s(a, b);
        }
      }
  return {particles, std::move(out)};
}

StateVector apply_spin(const StateVector& psi, const Eigen::MatrixXcd& spin_op) {
  const Index sd = spin_op.rows();
  if (sd == 0 || psi.size() % sd != 0) throw DomainError("apply_spin: dimension mismatch");
  const Index fd = psi.size() / sd;
  StateVector out(psi.size());
  using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> in_m(psi.data(), fd, sd);
  Eigen::Map<RowMat> out_m(out.data(), fd, sd);
  out_m.noalias() = in_m * spin_op.transpose();
  return out;
}

Vec3 total_spin(const StateVector& u, int particles) {
  const double norm = u.norm();
  if (std::abs(norm - 1.0) > 1e-9)
    throw DomainError("total_spin: state is not normalized (norm = " + std::to_string(norm) + ")");
  Vec3 s = Vec3::Zero();
  for (int lambda = 1; lambda <= particles; ++lambda)
    for (int m = 1; m <= 3; ++m) {
      const StateVector f = apply_spin(u, sigma_op(m, lambda, particles).matrix);
      const cplx e = u.dot(f);  // <sigma U, U> = U^dagger sigma U
      s[m - 1] += e.real();  // Hermitian expectation; Im is round-off
    }
  return s;
}

}  // namespace photontail
