#include "photontail/hamiltonian.hpp"

#include <string>

#include "photontail/errors.hpp"
#include "photontail/spin.hpp"

namespace photontail {

namespace {

constexpr double kHermiticityLimit = 1e-10;

void check_hermitian(const SparseHermitianOperator& op, const char* name) {
  const double r = op.hermiticity_residual();
  if (r > kHermiticityLimit)
    throw AssemblyError(std::string("assembled ") + name + " is not Hermitian (residual " + std::to_string(r) + ")");
}

}  // namespace

AssembledModel assemble(const ModelConfig& config) {
  const int P = config.particles();
  if (P < 1) throw ConfigError("spins.P must be >= 1");
  if (P > 12) throw ConfigError("spins.P must be <= 12");
  if (config.g < 0.0) throw ConfigError("coupling.g must be >= 0");

  ModeGrid grid = build_mode_grid(config.grid, config.polarization);
  const Index spin_dim = Index{1} << P;
  const auto fock_dim = FockBasis::dimension_for(grid.slot_count(), config.n_max);
  if (!fock_dim || *fock_dim > config.max_dimension / static_cast<std::size_t>(spin_dim)) {
    throw ConfigError("model dimension " +
                      (fock_dim ? std::to_string(*fock_dim * spin_dim) : std::string("(overflow)")) +
                      " exceeds the limit " + std::to_string(config.max_dimension));
  }
  FockBasis basis(grid.slot_count(), config.n_max, config.max_dimension);
  const auto fd = static_cast<Index>(basis.size());

  AssembledModel model{config, std::move(grid), std::move(basis), spin_dim, {}, {}, {}, {}, {}};

  const std::vector<double> omega = model.grid.slot_frequencies();
  model.photon_part = {kron_identity(d_gamma(model.basis, omega).matrix, spin_dim), true};

  Eigen::MatrixXcd zeeman = Eigen::MatrixXcd::Zero(spin_dim, spin_dim);
  for (int lambda = 1; lambda <= P; ++lambda)
    for (int m = 1; m <= 3; ++m)
      if (config.bext[m - 1] != 0.0) zeeman += config.bext[m - 1] * sigma_op(m, lambda, P).matrix;
  model.spin_part = {identity_kron(fd, zeeman), true};

  SparseMatrix interaction(fd * spin_dim, fd * spin_dim);
  model.couplings.resize(static_cast<std::size_t>(3 * P));
  for (int lambda = 1; lambda <= P; ++lambda) {
    for (int m = 1; m <= 3; ++m) {
      OnePhotonVector c = embed_field(m, config.positions[lambda - 1], model.grid, config.chi);
      const SparseHermitianOperator field = segal_field(model.basis, c);
      interaction += kron(field.matrix, sigma_op(m, lambda, P).matrix);
      model.couplings[AssembledModel::coupling_index(lambda, m)] = std::move(c);
    }
  }
  interaction.makeCompressed();
  model.interaction = {std::move(interaction), true};
  model.hamiltonian = hamiltonian_at(model, config.g);

  check_hermitian(model.photon_part, "photon energy");
  check_hermitian(model.spin_part, "Zeeman term");
  check_hermitian(model.interaction, "interaction");
  check_hermitian(model.hamiltonian, "Hamiltonian");
  return model;
}

SparseHermitianOperator hamiltonian_at(const AssembledModel& model, double g) {
  SparseMatrix h = model.photon_part.matrix + model.spin_part.matrix;
  h += g * model.interaction.matrix;
  h.makeCompressed();
  return {std::move(h), true};
}

}  // namespace photontail
