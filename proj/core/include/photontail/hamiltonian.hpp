#pragma once

#include <vector>

#include "photontail/fock.hpp"
#include "photontail/modes.hpp"
#include "photontail/types.hpp"

namespace photontail {

struct ModelConfig {
  double g = 0.1;
  Vec3 bext = Vec3::UnitZ();
  std::vector<Vec3> positions{Vec3::Zero()};
  CutoffFunction chi{};
  GridSpec grid{};
  int n_max = 2;
  PolarizationRule polarization{};
  std::size_t max_dimension = 5'000'000;

  int particles() const { return static_cast<int>(positions.size()); }
};

/// H(g) = H0 + g H_int on Fock (x) spin, with the pieces kept separately.
/// H0 = dGamma(omega) (x) I + sum_{lambda,m} B^ext_m I (x) sigma_m^[lambda]
/// H_int = sum_{lambda,m} Phi_S(B_{m,x_lambda}) (x) sigma_m^[lambda]
struct AssembledModel {
  ModelConfig config;
  ModeGrid grid;
  FockBasis basis;
  Index spin_dim = 2;

  SparseHermitianOperator photon_part;  // dGamma(omega) (x) I
  SparseHermitianOperator spin_part;    // sum B^ext_m sigma_m^[lambda]
  SparseHermitianOperator interaction;  // H_int
  SparseHermitianOperator hamiltonian;  // H(g)

  /// Discretized B_{m,x_lambda}, indexed coupling_index(lambda, m).
  std::vector<OnePhotonVector> couplings;

  int particles() const { return config.particles(); }
  Index dimension() const { return hamiltonian.dimension(); }
  static std::size_t coupling_index(int lambda, int m) { return static_cast<std::size_t>((lambda - 1) * 3 + (m - 1)); }
};

AssembledModel assemble(const ModelConfig& config);

/// H0 + g H_int for another coupling, reusing the assembled parts.
SparseHermitianOperator hamiltonian_at(const AssembledModel& model, double g);

}  // namespace photontail
