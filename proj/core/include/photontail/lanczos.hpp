#pragma once

#include <functional>
#include <vector>

#include "photontail/types.hpp"

namespace photontail {

/// y = A x for a Hermitian A.
using MatVec = std::function<void(const StateVector& x, StateVector& y)>;

MatVec make_matvec(const SparseMatrix& a, double shift = 0.0);

/// Hermitian Lanczos with full reorthogonalization. Vectors are kept
/// orthogonal to the columns of `deflate` (assumed orthonormal), so the
/// recurrence runs on the compressed operator (I - DD^*) A (I - DD^*).
class LanczosProcess {
 public:
  LanczosProcess(MatVec op, const StateVector& start, const Eigen::MatrixXcd* deflate = nullptr);

  /// Adds one basis vector. Returns false once the Krylov space is invariant.
  bool step();

  Index size() const { return static_cast<Index>(q_.size()); }
  bool exhausted() const { return exhausted_; }
  /// Norm of the (deflated) start vector.
  double beta0() const { return beta0_; }
  /// Coupling of the last basis vector to the next, unnormalized one.
  double next_beta() const { return next_beta_; }

  const std::vector<double>& alpha() const { return alpha_; }
  const std::vector<double>& beta() const { return beta_; }
  /// Tridiagonal projection T_k (k = size()).
  Eigen::MatrixXd tridiagonal() const;
  /// Q_k as a dim x k matrix.
  Eigen::MatrixXcd basis() const;
  /// Q_k y.
  StateVector combine(const Eigen::VectorXcd& y) const;

 private:
  void orthogonalize(StateVector& w) const;

  MatVec op_;
  const Eigen::MatrixXcd* deflate_;
  std::vector<StateVector> q_;
  std::vector<double> alpha_;
  std::vector<double> beta_;  // beta_[i] couples q_i and q_{i+1}
  StateVector w_;
  double beta0_ = 0.0;
  double next_beta_ = 0.0;
  bool exhausted_ = false;
};

struct EigenPair {
  double value = 0.0;
  StateVector vector;
  double residual = 0.0;
  int iterations = 0;
};

struct LanczosOptions {
  double tol = 1e-10;     // on ||A v - theta v||
  int max_basis = 200;    // per restart cycle
  int max_restarts = 60;
};

/// Lowest eigenpair of A restricted to the complement of `deflate`, by
/// explicitly restarted Lanczos. Throws SolverError when not converged.
EigenPair lanczos_lowest(const MatVec& op, Index dim, const StateVector& start,
                         const LanczosOptions& opts, const Eigen::MatrixXcd* deflate = nullptr);

}  // namespace photontail
