#include "photontail/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "photontail/errors.hpp"

namespace photontail {

MatVec make_matvec(const SparseMatrix& a, double shift) {
  return [&a, shift](const StateVector& x, StateVector& y) {
    y.noalias() = a * x;
    if (shift != 0.0) y += shift * x;
  };
}

LanczosProcess::LanczosProcess(MatVec op, const StateVector& start, const Eigen::MatrixXcd* deflate)
    : op_(std::move(op)), deflate_(deflate), w_(start) {
  orthogonalize(w_);
  beta0_ = w_.norm();
  next_beta_ = beta0_;
  exhausted_ = beta0_ == 0.0;
}

void LanczosProcess::orthogonalize(StateVector& w) const {
  // Two passes of classical Gram-Schmidt ("twice is enough").
  for (int pass = 0; pass < 2; ++pass) {
    if (deflate_ != nullptr && deflate_->cols() > 0) {
      const Eigen::VectorXcd c = deflate_->adjoint() * w;
      w.noalias() -= *deflate_ * c;
    }
    for (const auto& q : q_) w -= q.dot(w) * q;
  }
}

bool LanczosProcess::step() {
  if (exhausted_) return false;
  double scale = beta0_;
  for (double a : alpha_) scale = std::max(scale, std::abs(a));
  for (double b : beta_) scale = std::max(scale, b);
  if (next_beta_ <= 1e-14 * scale) {
    exhausted_ = true;
    return false;
  }
  if (!q_.empty()) beta_.push_back(next_beta_);
  q_.push_back(w_ / next_beta_);
  const StateVector& q = q_.back();

  StateVector aq(q.size());
  op_(q, aq);
  const double a = q.dot(aq).real();
  alpha_.push_back(a);
  aq -= a * q;
  if (q_.size() > 1) aq -= beta_.back() * q_[q_.size() - 2];
  orthogonalize(aq);
  next_beta_ = aq.norm();
  w_ = std::move(aq);
  if (static_cast<Index>(q_.size()) >= q.size()) {
    exhausted_ = true;
  }
  return true;
}

Eigen::MatrixXd LanczosProcess::tridiagonal() const {
  const Index k = size();
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
  for (Index i = 0; i < k; ++i) t(i, i) = alpha_[static_cast<std::size_t>(i)];
  for (Index i = 0; i + 1 < k; ++i) {
    t(i, i + 1) = beta_[static_cast<std::size_t>(i)];
    t(i + 1, i) = beta_[static_cast<std::size_t>(i)];
  }
  return t;
}

Eigen::MatrixXcd LanczosProcess::basis() const {
  if (q_.empty()) return {};
  Eigen::MatrixXcd q(q_.front().size(), size());
  for (Index i = 0; i < size(); ++i) q.col(i) = q_[static_cast<std::size_t>(i)];
  return q;
}

StateVector LanczosProcess::combine(const Eigen::VectorXcd& y) const {
  StateVector out = StateVector::Zero(q_.empty() ? 0 : q_.front().size());
  for (std::size_t i = 0; i < q_.size(); ++i) out += y[static_cast<Index>(i)] * q_[i];
  return out;
}

EigenPair lanczos_lowest(const MatVec& op, Index dim, const StateVector& start, const LanczosOptions& opts,
                         const Eigen::MatrixXcd* deflate) {
  const Index deflated = deflate != nullptr ? deflate->cols() : 0;
  const Index room = dim - deflated;
  if (room <= 0) throw SolverError("lanczos: nothing left after deflation", 0.0);
  const int max_basis = static_cast<int>(std::min<Index>(opts.max_basis, room));

  StateVector v = start;
  double last_residual = 0.0;
  int total_steps = 0;
  for (int restart = 0; restart <= opts.max_restarts; ++restart) {
    LanczosProcess lz(op, v, deflate);
    if (lz.exhausted()) throw SolverError("lanczos: start vector lies in the deflated space", 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    while (true) {
      lz.step();
      ++total_steps;
      const bool at_end = lz.exhausted() || lz.size() >= max_basis;
      if (!at_end && lz.size() % 8 != 0) continue;
      es.compute(lz.tridiagonal());
      const double est = lz.exhausted() ? 0.0 : lz.next_beta() * std::abs(es.eigenvectors()(lz.size() - 1, 0));
      if (at_end || est <= 0.1 * opts.tol) break;
    }
    const Eigen::VectorXcd y = es.eigenvectors().col(0).cast<cplx>();
    v = lz.combine(y);
    v.normalize();

    StateVector av(dim);
    op(v, av);
    if (deflate != nullptr && deflated > 0) av -= *deflate * (deflate->adjoint() * av);
    const double theta = v.dot(av).real();
    last_residual = (av - theta * v).norm();
    if (last_residual <= opts.tol) return {theta, std::move(v), last_residual, total_steps};
  }
  throw SolverError("lanczos: no convergence after " + std::to_string(opts.max_restarts) +
                        " restarts (residual " + std::to_string(last_residual) + ")",
                    last_residual);
}

}  // namespace photontail
