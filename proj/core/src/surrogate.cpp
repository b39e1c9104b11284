#include "photontail/surrogate.hpp"

#include <cmath>
#include <cstdio>

#include "photontail/errors.hpp"
#include "photontail/rng.hpp"
#include "photontail/spin.hpp"

namespace photontail {

SpectralSurrogate SpectralSurrogate::from_model(std::shared_ptr<const AssembledModel> model,
                                                const SurrogateOptions& opts) {
  if (!model) throw ConfigError("surrogate: null model");
  SpectralSurrogate s;
  s.h_ = std::shared_ptr<const SparseHermitianOperator>(model, &model->hamiltonian);
  s.particles_ = model->particles();
  s.g_ = model->config.g;
  s.chi_ = model->config.chi;
  s.positions_ = model->config.positions;
  s.model_ = std::move(model);
  s.finish(opts);
  return s;
}

SpectralSurrogate SpectralSurrogate::from_operator(SparseHermitianOperator h, int particles, double g,
                                                   const CutoffFunction& chi, std::vector<Vec3> positions,
                                                   const SurrogateOptions& opts) {
  if (particles < 1 || particles > 12) throw ConfigError("surrogate: particle count must be 1..12");
  const Index sd = Index{1} << particles;
  if (h.dimension() == 0 || h.dimension() % sd != 0)
    throw ConfigError("surrogate: operator dimension is not a multiple of 2^P");
  if (positions.empty()) positions.assign(static_cast<std::size_t>(particles), Vec3::Zero());
  if (static_cast<int>(positions.size()) != particles)
    throw ConfigError("surrogate: expected one position per particle");
  SpectralSurrogate s;
  s.h_ = std::make_shared<const SparseHermitianOperator>(std::move(h));
  s.particles_ = particles;
  s.g_ = g;
  s.chi_ = chi;
  s.positions_ = std::move(positions);
  s.finish(opts);
  return s;
}

SpectralSurrogate SpectralSurrogate::random_fixture(Index fock_dim, int particles, std::uint64_t seed, double g,
                                                    const CutoffFunction& chi, std::vector<Vec3> positions) {
  const Index n = fock_dim * (Index{1} << particles);
  Rng rng(seed);
  Eigen::MatrixXcd a(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) a(i, j) = rng.complex_normal();
  const Eigen::MatrixXcd herm = (a + a.adjoint()) / (2.0 * std::sqrt(static_cast<double>(n)));
  SparseMatrix m = herm.sparseView();
  return from_operator({std::move(m), true}, particles, g, chi, std::move(positions));
}

void SpectralSurrogate::finish(const SurrogateOptions& opts) {
  ground_ = ground_state(*h_, opts.ground);
  const int P = particles_;
  f_.resize(static_cast<std::size_t>(3 * P));
  spectral_.resize(f_.size());
  std::shared_ptr<const Eigen::MatrixXcd> vectors;
  if (ground_.spectrum) {
    vectors = std::shared_ptr<const Eigen::MatrixXcd>(ground_.spectrum, &ground_.spectrum->vectors);
  }
  for (int lambda = 1; lambda <= P; ++lambda) {
    for (int m = 1; m <= 3; ++m) {
      const std::size_t i = rhs_index(lambda, m);
      f_[i] = apply_spin(ground_.vector, sigma_op(m, lambda, P).matrix);
      spectral_[i] = vectors ? spectral_rhs(*ground_.spectrum, vectors, f_[i])
                             : spectral_rhs(*h_, ground_, f_[i], opts.resolvent);
    }
  }
  total_spin_ = photontail::total_spin(ground_.vector, P);
}

SpectralSurrogate SpectralSurrogate::rephased(cplx phase) const {
  SpectralSurrogate s = *this;
  s.ground_.vector *= phase;
  for (auto& f : s.f_) f *= phase;
  for (auto& sp : s.spectral_) sp.coeffs *= phase;
  s.cache_ = std::make_shared<Cache>();
  return s;
}

std::shared_ptr<const std::vector<StateVector>> SpectralSurrogate::resolved(double rho) const {
  if (!(rho > 0.0)) throw DomainError("resolved: |k| must be positive");
  char key[32];
  std::snprintf(key, sizeof key, "%.11e", rho);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->entries.find(key);
  if (it != cache_->entries.end()) return it->second;
  auto values = std::make_shared<std::vector<StateVector>>();
  values->reserve(spectral_.size());
  for (const auto& sp : spectral_) values->push_back(sp.resolvent(rho));
  cache_->entries.emplace(key, values);
  return values;
}

std::size_t SpectralSurrogate::cache_size() const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->entries.size();
}

}  // namespace photontail
