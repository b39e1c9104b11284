#include "photontail/groundstate.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "photontail/errors.hpp"
#include "photontail/lanczos.hpp"
#include "photontail/rng.hpp"

namespace photontail {

Index fix_phase(StateVector& u) {
  const double peak = u.cwiseAbs().maxCoeff();
  Index anchor = 0;
  for (Index i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) >= peak * (1.0 - 1e-9)) {
      anchor = i;
      break;
    }
  }
  if (peak > 0.0) u *= std::conj(u[anchor]) / std::abs(u[anchor]);
  u[anchor] = std::abs(u[anchor]);
  return anchor;
}

namespace {

void check_gap(const GroundState& gs, const GroundStateOptions& opts) {
  const double threshold = opts.degeneracy_rel * std::abs(gs.energy) + opts.degeneracy_abs;
  if (gs.gap < threshold) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "degenerate ground state: lowest eigenvalues " << gs.energy << " and " << gs.second
        << " differ by " << gs.gap << " (< " << threshold << ")";
    throw DegenerateGroundState(msg.str(), gs.energy, gs.second);
  }
}

GroundState dense_ground_state(const SparseHermitianOperator& h) {
  const Eigen::MatrixXcd dense = Eigen::MatrixXcd(h.matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
  if (es.info() != Eigen::Success) throw SolverError("dense eigensolver failed", 0.0);
  auto spectrum = std::make_shared<DenseSpectrum>();
  spectrum->values = es.eigenvalues();
  spectrum->vectors = es.eigenvectors();

  GroundState gs;
  gs.dense = true;
  gs.energy = spectrum->values[0];
  gs.second = spectrum->values.size() > 1 ? spectrum->values[1] : gs.energy + 1.0;
  gs.gap = gs.second - gs.energy;
  gs.vector = spectrum->vectors.col(0);
  gs.phase_anchor = fix_phase(gs.vector);
  // Keep the stored eigenvector consistent with the phase-fixed U.
  spectrum->vectors.col(0) = gs.vector;
  gs.residual = (h.matrix * gs.vector - gs.energy * gs.vector).norm();
  gs.spectrum = std::move(spectrum);
  return gs;
}

GroundState krylov_ground_state(const SparseHermitianOperator& h, const GroundStateOptions& opts) {
  const Index dim = h.dimension();
  Rng rng(opts.seed);
  const MatVec op = make_matvec(h.matrix);
  LanczosOptions lo;
  lo.tol = opts.tol;
  lo.max_basis = opts.max_basis;

  EigenPair lowest = lanczos_lowest(op, dim, rng.complex_vector(dim), lo);
  // A single Krylov space sees one copy of a degenerate eigenvalue, so the
  // second level comes from a fresh run deflated against U.
  Eigen::MatrixXcd deflate = lowest.vector;
  LanczosOptions lo2 = lo;
  lo2.tol = std::max(opts.tol, 1e-9);
  EigenPair next = lanczos_lowest(op, dim, rng.complex_vector(dim), lo2, &deflate);

  GroundState gs;
  gs.energy = lowest.value;
  gs.second = next.value;
  gs.gap = std::max(0.0, next.value - lowest.value);
  gs.vector = std::move(lowest.vector);
  gs.phase_anchor = fix_phase(gs.vector);
  gs.residual = (h.matrix * gs.vector - gs.energy * gs.vector).norm();
  return gs;
}

}  // namespace

GroundState ground_state(const SparseHermitianOperator& h, const GroundStateOptions& opts) {
  if (!(opts.tol > 0.0)) throw ConfigError("solver.tol must be positive");
  GroundState gs = h.dimension() <= opts.dense_threshold ? dense_ground_state(h) : krylov_ground_state(h, opts);
  check_gap(gs, opts);
  if (gs.residual > opts.tol) throw SolverError("ground-state residual above tolerance", gs.residual);
  return gs;
}

GroundState ground_state(const AssembledModel& model, const GroundStateOptions& opts) {
  return ground_state(model.hamiltonian, opts);
}

}  // namespace photontail
