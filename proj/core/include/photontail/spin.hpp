#pragma once

#include "photontail/types.hpp"

namespace photontail {

/// Operator on (C^2)^{(x) P}; particle 1 is the slowest-varying tensor index
/// and each factor is ordered (up, down) so that sigma_3 = diag(1, -1).
struct SpinOperator {
  int particles = 1;
  Eigen::MatrixXcd matrix;
};

/// Pauli matrix sigma_m, m in 1..3.
Eigen::Matrix2cd pauli(int m);

/// I (x) ... (x) sigma_m (x) ... (x) I with sigma_m at position lambda (1-based).
SpinOperator sigma_op(int m, int lambda, int particles);

/// (I_fock (x) S) psi for a spin-space operator S, without forming the product.
StateVector apply_spin(const StateVector& psi, const Eigen::MatrixXcd& spin_op);

/// S_j = sum_lambda <(I (x) sigma_j^[lambda]) U, U>. Requires ||U|| = 1 to 1e-9.
Vec3 total_spin(const StateVector& u, int particles);

}  // namespace photontail
