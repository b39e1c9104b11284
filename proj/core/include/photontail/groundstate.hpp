#pragma once

#include <cstdint>
#include <memory>

#include "photontail/fock.hpp"
#include "photontail/hamiltonian.hpp"
#include "photontail/types.hpp"

namespace photontail {

/// Dimension at or below which eigen- and linear solves use dense matrices.
inline constexpr Index kDenseThreshold = 2000;

/// Full eigendecomposition H = V diag(values) V^*, kept when the dense path
/// ran so that resolvent solves can reuse it.
struct DenseSpectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

struct GroundStateOptions {
  double tol = 1e-10;              // residual ||HU - EU||
  double degeneracy_rel = 1e-8;    // threshold = rel * |E| + abs
  double degeneracy_abs = 1e-10;
  std::uint64_t seed = 20240611;
  Index dense_threshold = kDenseThreshold;
  int max_basis = 200;
};

struct GroundState {
  double energy = 0.0;
  StateVector vector;  // normalized, largest amplitude real positive
  double gap = 0.0;    // second eigenvalue minus energy
  double second = 0.0;
  double residual = 0.0;
  bool dense = false;
  /// Index of the amplitude made real positive.
  Index phase_anchor = 0;
  std::shared_ptr<const DenseSpectrum> spectrum;  // set on the dense path
};

/// Lowest eigenpair and gap of a Hermitian operator. Throws
/// DegenerateGroundState when the gap is below the threshold.
GroundState ground_state(const SparseHermitianOperator& h, const GroundStateOptions& opts = {});
GroundState ground_state(const AssembledModel& model, const GroundStateOptions& opts = {});

/// Multiplies by a unit phase so the first amplitude of (numerically) largest
/// magnitude is real and positive; returns that index.
Index fix_phase(StateVector& u);

}  // namespace photontail
