#include "photontail/fock.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "photontail/errors.hpp"

namespace photontail {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

std::string key_of(std::span<const std::uint8_t> occ) {
  return std::string(reinterpret_cast<const char*>(occ.data()), occ.size());
}

// Appends every occupation vector of `remaining` photons over slots
// [slot, n) with the earlier slots taking the larger values first.
void enumerate(std::vector<std::uint8_t>& current, std::size_t slot, int remaining,
               std::vector<std::uint8_t>& out) {
  const std::size_t n = current.size();
  if (slot + 1 == n) {
    current[slot] = static_cast<std::uint8_t>(remaining);
    out.insert(out.end(), current.begin(), current.end());
    current[slot] = 0;
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    current[slot] = static_cast<std::uint8_t>(v);
    enumerate(current, slot + 1, remaining - v, out);
  }
  current[slot] = 0;
}

}  // namespace

double SparseHermitianOperator::hermiticity_residual() const {
  const SparseMatrix diff = matrix - SparseMatrix(matrix.adjoint());
  double worst = 0.0;
  for (Index r = 0; r < diff.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(diff, r); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

std::optional<std::size_t> FockBasis::dimension_for(std::size_t slot_count, int n_max) {
  // C(s + n, n) built incrementally: C(s+k, k) = C(s+k-1, k-1) * (s+k) / k.
  // The product is divisible by k, so only the multiplication can overflow.
  constexpr std::size_t kLimit = std::numeric_limits<std::size_t>::max() / 4;
  std::size_t value = 1;
  for (int k = 1; k <= n_max; ++k) {
    const std::size_t factor = slot_count + static_cast<std::size_t>(k);
    if (value > kLimit / factor) return std::nullopt;
    value = value * factor / static_cast<std::size_t>(k);
  }
  return value;
}

FockBasis::FockBasis(std::size_t slot_count, int n_max, std::size_t max_dimension)
    : slots_(slot_count), n_max_(n_max) {
  if (slot_count < 1) throw ConfigError("Fock basis needs at least one slot");
  if (n_max < 0) throw ConfigError("fock.n_max must be >= 0");
  if (n_max > 255) throw ConfigError("fock.n_max must be <= 255");
  const auto dim = dimension_for(slot_count, n_max);
  if (!dim || *dim > max_dimension || *dim >= kNone) {
    throw ConfigError("Fock basis dimension " + (dim ? std::to_string(*dim) : std::string("(overflow)")) +
                      " exceeds the limit " + std::to_string(max_dimension) + " for " +
                      std::to_string(slot_count) + " slots and n_max = " + std::to_string(n_max));
  }
  count_ = *dim;
  occ_.reserve(count_ * slots_);
  std::vector<std::uint8_t> current(slots_, 0);
  for (int n = 0; n <= n_max; ++n) enumerate(current, 0, n, occ_);
  if (occ_.size() != count_ * slots_) throw AssemblyError("Fock enumeration count mismatch");

  totals_.resize(count_);
  index_.reserve(count_);
  for (std::size_t i = 0; i < count_; ++i) {
    const auto occ = occupation(i);
    int t = 0;
    for (auto v : occ) t += v;
    totals_[i] = t;
    index_.emplace(key_of(occ), i);
  }

  std::vector<std::uint32_t> raise(count_ * slots_, kNone);
  std::vector<std::uint32_t> lower(count_ * slots_, kNone);
  std::vector<std::uint8_t> scratch(slots_);
  for (std::size_t i = 0; i < count_; ++i) {
    if (totals_[i] >= n_max_) continue;
    const auto occ = occupation(i);
    std::copy(occ.begin(), occ.end(), scratch.begin());
    for (std::size_t s = 0; s < slots_; ++s) {
      ++scratch[s];
      const std::size_t j = index_.at(key_of(scratch));
      --scratch[s];
      raise[i * slots_ + s] = static_cast<std::uint32_t>(j);
      lower[j * slots_ + s] = static_cast<std::uint32_t>(i);
    }
  }
  raise_.resize(raise.size());
  lower_.resize(lower.size());
  for (std::size_t i = 0; i < raise.size(); ++i) {
    raise_[i] = raise[i] == kNone ? npos : raise[i];
    lower_[i] = lower[i] == kNone ? npos : lower[i];
  }
}

std::optional<std::size_t> FockBasis::find(std::span<const std::uint8_t> occupation) const {
  if (occupation.size() != slots_) return std::nullopt;
  const auto it = index_.find(key_of(occupation));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string FockBasis::occupation_string(std::size_t index) const {
  std::string s;
  const auto occ = occupation(index);
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(occ[i]);
  }
  return s;
}

FockBasis build_fock_basis(std::size_t mode_count, int n_max) {
  if (mode_count < 1) throw ConfigError("build_fock_basis: mode count must be >= 1");
  return FockBasis(2 * mode_count, n_max);
}

SparseMatrix ladder_matrix(const FockBasis& basis, std::size_t slot, Ladder direction) {
  if (slot >= basis.slot_count()) throw DomainError("ladder: slot index out of range");
  const auto dim = static_cast<Index>(basis.size());
  std::vector<Eigen::Triplet<cplx>> trips;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::size_t up = basis.raised(i, slot);
    if (up == FockBasis::npos) continue;
    // <up| a^dagger |i> = sqrt(n_slot(i) + 1) = <i| a |up>
    const double amp = std::sqrt(static_cast<double>(basis.occupation(i)[slot]) + 1.0);
    if (direction == Ladder::create) {
      trips.emplace_back(static_cast<Index>(up), static_cast<Index>(i), amp);
    } else {
      trips.emplace_back(static_cast<Index>(i), static_cast<Index>(up), amp);
    }
  }
  SparseMatrix m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

StateVector ladder(const FockBasis& basis, std::size_t slot, Ladder direction, const StateVector& psi) {
  if (slot >= basis.slot_count()) throw DomainError("ladder: slot index out of range");
  const auto fock_dim = static_cast<Index>(basis.size());
  if (fock_dim == 0 || psi.size() % fock_dim != 0)
    throw ConfigError("ladder: state dimension is not a multiple of the Fock dimension");
  const Index spin_dim = psi.size() / fock_dim;
  StateVector out = StateVector::Zero(psi.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::size_t up = basis.raised(i, slot);
    if (up == FockBasis::npos) continue;
    const double amp = std::sqrt(static_cast<double>(basis.occupation(i)[slot]) + 1.0);
    const Index lo = static_cast<Index>(i) * spin_dim;
    const Index hi = static_cast<Index>(up) * spin_dim;
    if (direction == Ladder::create) {
      out.segment(hi, spin_dim) += amp * psi.segment(lo, spin_dim);
    } else {
      out.segment(lo, spin_dim) += amp * psi.segment(hi, spin_dim);
    }
  }
  return out;
}

SparseHermitianOperator d_gamma(const FockBasis& basis, std::span<const double> diag) {
  if (diag.size() != basis.slot_count())
    throw ConfigError("d_gamma: diagonal has " + std::to_string(diag.size()) + " entries, basis has " +
                      std::to_string(basis.slot_count()) + " slots");
  const auto dim = static_cast<Index>(basis.size());
  SparseMatrix m(dim, dim);
  m.reserve(Eigen::VectorXi::Constant(dim, 1));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto occ = basis.occupation(i);
    double e = 0.0;
    for (std::size_t s = 0; s < occ.size(); ++s) e += occ[s] * diag[s];
    m.insert(static_cast<Index>(i), static_cast<Index>(i)) = e;
  }
  m.makeCompressed();
  return {std::move(m), true};
}

SparseHermitianOperator number_operator(const FockBasis& basis) {
  const std::vector<double> ones(basis.slot_count(), 1.0);
  return d_gamma(basis, ones);
}

SparseHermitianOperator segal_field(const FockBasis& basis, const Eigen::VectorXcd& v) {
  if (static_cast<std::size_t>(v.size()) != basis.slot_count())
    throw ConfigError("segal_field: vector has " + std::to_string(v.size()) + " slots, basis has " +
                      std::to_string(basis.slot_count()));
  const auto dim = static_cast<Index>(basis.size());
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<Eigen::Triplet<cplx>> trips;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto occ = basis.occupation(i);
    for (std::size_t s = 0; s < basis.slot_count(); ++s) {
      if (v[static_cast<Index>(s)] == cplx(0.0)) continue;
      const std::size_t up = basis.raised(i, s);
      if (up == FockBasis::npos) continue;
      const double amp = std::sqrt(static_cast<double>(occ[s]) + 1.0) * inv_sqrt2;
      // creation part V_s a_s^dagger and its adjoint conj(V_s) a_s
      trips.emplace_back(static_cast<Index>(up), static_cast<Index>(i), amp * v[static_cast<Index>(s)]);
      trips.emplace_back(static_cast<Index>(i), static_cast<Index>(up), amp * std::conj(v[static_cast<Index>(s)]));
    }
  }
  SparseMatrix m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return {std::move(m), true};
}

SparseMatrix kron(const SparseMatrix& fock_op, const Eigen::MatrixXcd& spin_op) {
  const Index sd = spin_op.rows();
  std::vector<std::pair<Index, Index>> spin_nz;
  for (Index a = 0; a < sd; ++a)
    for (Index b = 0; b < sd; ++b)
      if (spin_op(a, b) != cplx(0.0)) spin_nz.emplace_back(a, b);
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<std::size_t>(fock_op.nonZeros()) * spin_nz.size());
  for (Index r = 0; r < fock_op.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(fock_op, r); it; ++it)
      for (const auto& [a, b] : spin_nz)
        trips.emplace_back(it.row() * sd + a, it.col() * sd + b, it.value() * spin_op(a, b));
  SparseMatrix m(fock_op.rows() * sd, fock_op.cols() * sd);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

SparseMatrix kron_identity(const SparseMatrix& fock_op, Index spin_dim) {
  return kron(fock_op, Eigen::MatrixXcd::Identity(spin_dim, spin_dim));
}

SparseMatrix identity_kron(Index fock_dim, const Eigen::MatrixXcd& spin_op) {
  SparseMatrix id(fock_dim, fock_dim);
  id.setIdentity();
  return kron(id, spin_op);
}

void write_basis_csv(std::ostream& out, const FockBasis& basis) {
  out << "state_index,occupation,total\n";
  for (std::size_t i = 0; i < basis.size(); ++i)
    out << i << ",\"" << basis.occupation_string(i) << "\"," << basis.total(i) << '\n';
}

void write_state_csv(std::ostream& out, const FockBasis& basis, const StateVector& psi) {
  const auto fock_dim = static_cast<Index>(basis.size());
  const Index spin_dim = psi.size() / fock_dim;
  int particles = 0;
  while ((Index{1} << particles) < spin_dim) ++particles;
  out << "state_index,occupation,spin,re,im\n";
  char buf[64];
  for (Index f = 0; f < fock_dim; ++f) {
    const std::string occ = basis.occupation_string(static_cast<std::size_t>(f));
    for (Index s = 0; s < spin_dim; ++s) {
      std::string spin;
      for (int p = particles - 1; p >= 0; --p) spin += ((s >> p) & 1) ? 'd' : 'u';
      const cplx v = psi[f * spin_dim + s];
      out << f * spin_dim + s << ",\"" << occ << "\"," << spin;
      std::snprintf(buf, sizeof buf, ",%.17g", v.real());
      out << buf;
      std::snprintf(buf, sizeof buf, ",%.17g", v.imag());
      out << buf << '\n';
    }
  }
}

void write_operator_csv(std::ostream& out, const SparseMatrix& op) {
  out << "row,col,re,im\n";
  char buf[96];
  for (Index r = 0; r < op.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(op, r); it; ++it) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", it.value().real(), it.value().imag());
      out << it.row() << ',' << it.col() << ',' << buf << '\n';
    }
}

}  // namespace photontail
