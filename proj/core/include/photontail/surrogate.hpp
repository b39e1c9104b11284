#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "photontail/groundstate.hpp"
#include "photontail/hamiltonian.hpp"
#include "photontail/modes.hpp"
#include "photontail/resolvent.hpp"
#include "photontail/types.hpp"

namespace photontail {

struct SurrogateOptions {
  GroundStateOptions ground{};
  ResolventOptions resolvent{};
};

/// The bundle (H, E, U, f_m^[lambda], chi, x_lambda, g) consumed by the
/// pull-through and asymptotic routines. f is indexed rhs_index(lambda, m).
class SpectralSurrogate {
 public:
  /// From an assembled model; g, chi and positions come from its config.
  static SpectralSurrogate from_model(std::shared_ptr<const AssembledModel> model,
                                      const SurrogateOptions& opts = {});

  /// From any Hermitian operator on C^{fock_dim} (x) (C^2)^{(x) P}.
  static SpectralSurrogate from_operator(SparseHermitianOperator h, int particles, double g,
                                         const CutoffFunction& chi, std::vector<Vec3> positions,
                                         const SurrogateOptions& opts = {});

  /// Seeded random Hermitian matrix of size fock_dim * 2^P with entries of
  /// unit scale; ground state and f built as for a real model.
  static SpectralSurrogate random_fixture(Index fock_dim, int particles, std::uint64_t seed, double g = 0.1,
                                          const CutoffFunction& chi = {},
                                          std::vector<Vec3> positions = {});

  /// Same surrogate with U (hence every f) multiplied by a unit phase.
  SpectralSurrogate rephased(cplx phase) const;

  Index dimension() const { return h_->dimension(); }
  int particles() const { return particles_; }
  Index spin_dim() const { return Index{1} << particles_; }
  std::size_t rhs_count() const { return f_.size(); }
  static std::size_t rhs_index(int lambda, int m) { return static_cast<std::size_t>((lambda - 1) * 3 + (m - 1)); }

  const SparseHermitianOperator& hamiltonian() const { return *h_; }
  double energy() const { return ground_.energy; }
  double gap() const { return ground_.gap; }
  const StateVector& ground_vector() const { return ground_.vector; }
  const GroundState& ground() const { return ground_; }
  const StateVector& f(std::size_t index) const { return f_[index]; }
  const SpectralRhs& spectral(std::size_t index) const { return spectral_[index]; }
  double g() const { return g_; }
  const CutoffFunction& chi() const { return chi_; }
  const std::vector<Vec3>& positions() const { return positions_; }
  const Vec3& total_spin() const { return total_spin_; }
  /// Null for synthetic fixtures.
  const std::shared_ptr<const AssembledModel>& model() const { return model_; }

  /// (H - E + rho)^{-1} f for every rhs, cached on rho to 12 significant digits.
  std::shared_ptr<const std::vector<StateVector>> resolved(double rho) const;
  std::size_t cache_size() const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::string, std::shared_ptr<const std::vector<StateVector>>> entries;
  };

  SpectralSurrogate() = default;
  void finish(const SurrogateOptions& opts);

  std::shared_ptr<const SparseHermitianOperator> h_;
  std::shared_ptr<const AssembledModel> model_;
  GroundState ground_;
  int particles_ = 1;
  double g_ = 0.0;
  CutoffFunction chi_{};
  std::vector<Vec3> positions_;
  std::vector<StateVector> f_;
  std::vector<SpectralRhs> spectral_;
  Vec3 total_spin_ = Vec3::Zero();
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

}  // namespace photontail
