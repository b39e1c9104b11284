#include "photontail/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "photontail/errors.hpp"
#include "photontail/lanczos.hpp"

namespace photontail {

void check_shift(cplx z) {
  if (z == cplx(0.0)) throw DomainError("resolvent shift z = 0 is not admissible");
  if (z.real() < 0.0) {
    std::ostringstream msg;
    msg << "resolvent shift must have Re z >= 0, got " << z;
    throw DomainError(msg.str());
  }
}

namespace {

// Solves (T + z) y = beta0 e1 for the Lanczos tridiagonal T.
Eigen::VectorXcd tridiagonal_solve(const Eigen::MatrixXd& t, cplx z, double beta0) {
  const Index k = t.rows();
  Eigen::MatrixXcd a = t.cast<cplx>();
  a.diagonal().array() += z;
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(k);
  rhs[0] = beta0;
  return a.partialPivLu().solve(rhs);
}

}  // namespace

StateVector resolvent_apply(const SparseHermitianOperator& h, double energy, cplx z, const StateVector& f,
                            double tol) {
  check_shift(z);
  const Index dim = h.dimension();
  if (f.size() != dim) throw DomainError("resolvent_apply: vector size does not match the operator");
  const double fnorm = f.norm();
  if (fnorm == 0.0) return StateVector::Zero(dim);

  if (dim <= kDenseThreshold) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd(h.matrix);
    a.diagonal().array() += z - energy;
    StateVector y = a.partialPivLu().solve(f);
    const double res = (h.matrix * y + (z - energy) * y - f).norm();
    if (res > tol * fnorm) throw SolverError("dense resolvent solve above tolerance", res / fnorm);
    return y;
  }

  LanczosProcess lz(make_matvec(h.matrix, -energy), f);
  const int cap = static_cast<int>(std::min<Index>(dim, 2000));
  Eigen::VectorXcd y;
  while (true) {
    lz.step();
    const bool at_end = lz.exhausted() || lz.size() >= cap;
    if (!at_end && lz.size() % 8 != 0) continue;
    y = tridiagonal_solve(lz.tridiagonal(), z, lz.beta0());
    const double est = lz.exhausted() ? 0.0 : lz.next_beta() * std::abs(y[lz.size() - 1]);
    if (est <= 0.1 * tol * fnorm || at_end) break;
  }
  StateVector x = lz.combine(y);
  const double res = (h.matrix * x + (z - energy) * x - f).norm();
  if (res > tol * fnorm) {
    std::ostringstream msg;
    msg << "Krylov resolvent solve did not converge at z = " << z;
    throw SolverError(msg.str(), res / fnorm);
  }
  return x;
}

Eigen::VectorXcd SpectralRhs::resolvent_reduced(cplx z) const {
  Eigen::VectorXcd out(coeffs.size());
  for (Index i = 0; i < coeffs.size(); ++i) out[i] = coeffs[i] / (shifts[i] + z);
  return out;
}

Eigen::VectorXcd SpectralRhs::filter_reduced(cplx z) const {
  Eigen::VectorXcd out(coeffs.size());
  for (Index i = 0; i < coeffs.size(); ++i) out[i] = coeffs[i] * filter_factor(shifts[i], z);
  return out;
}

SpectralRhs spectral_rhs(const DenseSpectrum& spectrum, std::shared_ptr<const Eigen::MatrixXcd> vectors,
                         const StateVector& f) {
  SpectralRhs out;
  out.coeffs = vectors->adjoint() * f;
  out.shifts = (spectrum.values.array() - spectrum.values[0]).max(0.0).matrix();
  out.shifts[0] = 0.0;
  out.basis = std::move(vectors);
  return out;
}

SpectralRhs spectral_rhs(const SparseHermitianOperator& h, const GroundState& gs, const StateVector& f,
                         const ResolventOptions& opts) {
  const Index dim = h.dimension();
  const Eigen::MatrixXcd deflate = gs.vector;
  const cplx parallel = gs.vector.dot(f);
  const double fnorm = f.norm();

  LanczosProcess lz(make_matvec(h.matrix, -gs.energy), f, &deflate);
  const double gap = std::max(gs.gap, 1e-12);
  const std::vector<cplx> probes = {cplx(0.0), cplx(gap, 0.0), cplx(10.0 * gap, 0.0), cplx(0.0, 0.5 * gap),
                                    cplx(0.0, 2.0 * gap), cplx(0.0, 10.0 * gap)};
  const int cap = static_cast<int>(std::min<Index>(dim - 1, opts.max_krylov));
  double worst = 0.0;
  while (!lz.exhausted()) {
    lz.step();
    const bool at_end = lz.exhausted() || lz.size() >= cap;
    if (!at_end && lz.size() % 8 != 0) continue;
    worst = 0.0;
    if (!lz.exhausted()) {
      const Eigen::MatrixXd t = lz.tridiagonal();
      for (cplx z : probes) {
        const Eigen::VectorXcd y = tridiagonal_solve(t, z, lz.beta0());
        worst = std::max(worst, lz.next_beta() * std::abs(y[lz.size() - 1]) / std::max(fnorm, 1e-300));
      }
    }
    if (worst <= opts.tol) break;
    if (at_end) {
      throw SolverError("Krylov spectral representation did not converge within " + std::to_string(cap) +
                            " vectors",
                        worst);
    }
  }

  const Index k = lz.size();
  auto basis = std::make_shared<Eigen::MatrixXcd>(dim, k + 1);
  basis->col(0) = gs.vector;
  SpectralRhs out;
  out.shifts = Eigen::VectorXd::Zero(k + 1);
  out.coeffs = Eigen::VectorXcd::Zero(k + 1);
  out.coeffs[0] = parallel;
  if (k > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lz.tridiagonal());
    basis->rightCols(k) = lz.basis() * es.eigenvectors().cast<cplx>();
    out.shifts.tail(k) = es.eigenvalues().array().max(0.0).matrix();
    out.coeffs.tail(k) = (lz.beta0() * es.eigenvectors().row(0).transpose()).cast<cplx>();
  }
  out.basis = std::move(basis);
  out.residual = worst;
  return out;
}

}  // namespace photontail
