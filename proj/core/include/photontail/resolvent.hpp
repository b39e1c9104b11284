#pragma once

#include <memory>

#include "photontail/fock.hpp"
#include "photontail/groundstate.hpp"
#include "photontail/types.hpp"

namespace photontail {

/// (H - E + z)^{-1} f for a single shift. Re z >= 0 and z != 0. Dense LU at or
/// below kDenseThreshold, Lanczos (FOM) above; the returned y satisfies
/// ||(H - E + z) y - f|| <= tol ||f||.
StateVector resolvent_apply(const SparseHermitianOperator& h, double energy, cplx z, const StateVector& f,
                            double tol = 1e-10);

/// Throws DomainError unless Re z >= 0 and z != 0.
void check_shift(cplx z);

/// F(z) = z / (delta + z), with F = 1 on the ground component (delta = 0).
inline cplx filter_factor(double delta, cplx z) { return delta == 0.0 ? cplx(1.0) : z / (delta + z); }

/// Spectral form of one right-hand side: f = Q c and
/// (H - E + z)^{-1} f = Q (c ./ (delta + z)) with Q orthonormal, delta >= 0.
/// Quadratures over z run on the short coefficient vector and expand once.
struct SpectralRhs {
  std::shared_ptr<const Eigen::MatrixXcd> basis;
  Eigen::VectorXd shifts;
  Eigen::VectorXcd coeffs;
  double residual = 0.0;  // worst relative residual at the probe shifts

  Index size() const { return coeffs.size(); }
  Eigen::VectorXcd resolvent_reduced(cplx z) const;
  Eigen::VectorXcd filter_reduced(cplx z) const;
  StateVector expand(const Eigen::VectorXcd& reduced) const { return *basis * reduced; }
  StateVector resolvent(cplx z) const { return expand(resolvent_reduced(z)); }
};

struct ResolventOptions {
  double tol = 1e-10;
  int max_krylov = 600;
};

/// Dense path: the full eigenbasis (shared) with c = V^* f.
SpectralRhs spectral_rhs(const DenseSpectrum& spectrum, std::shared_ptr<const Eigen::MatrixXcd> vectors,
                         const StateVector& f);

/// Krylov path: Lanczos on H - E deflated against U, rotated to Ritz vectors;
/// Q = [U | Ritz], delta = [0 | theta].
SpectralRhs spectral_rhs(const SparseHermitianOperator& h, const GroundState& gs, const StateVector& f,
                         const ResolventOptions& opts = {});

}  // namespace photontail
