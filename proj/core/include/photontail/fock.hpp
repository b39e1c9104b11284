#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "photontail/types.hpp"

namespace photontail {

/// Sparse operator with an explicit Hermiticity flag.
struct SparseHermitianOperator {
  SparseMatrix matrix;
  bool hermitian = true;

  Index dimension() const { return matrix.rows(); }
  StateVector apply(const StateVector& v) const { return matrix * v; }
  /// max_ij |A_ij - conj(A_ji)|
  double hermiticity_residual() const;
};

/// Occupation-number basis {n : sum(n) <= n_max} over `slot_count` bosonic
/// slots, in graded order: by total photon number, then lexicographically
/// descending (slot 0 filled first).
class FockBasis {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  static constexpr std::size_t kDefaultMaxDimension = 20'000'000;

  FockBasis(std::size_t slot_count, int n_max, std::size_t max_dimension = kDefaultMaxDimension);

  std::size_t size() const { return count_; }
  std::size_t slot_count() const { return slots_; }
  int n_max() const { return n_max_; }

  std::span<const std::uint8_t> occupation(std::size_t index) const {
    return {occ_.data() + index * slots_, slots_};
  }
  int total(std::size_t index) const { return totals_[index]; }

  std::optional<std::size_t> find(std::span<const std::uint8_t> occupation) const;

  /// Index of n + e_slot, or npos if that leaves the truncation.
  std::size_t raised(std::size_t index, std::size_t slot) const {
    return raise_[index * slots_ + slot];
  }
  /// Index of n - e_slot, or npos if n_slot = 0.
  std::size_t lowered(std::size_t index, std::size_t slot) const {
    return lower_[index * slots_ + slot];
  }

  /// "0,2,1,..." style rendering used by the CSV dumps.
  std::string occupation_string(std::size_t index) const;

  /// C(slot_count + n_max, n_max), or nullopt on overflow.
  static std::optional<std::size_t> dimension_for(std::size_t slot_count, int n_max);

 private:
  std::size_t slots_;
  int n_max_;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> occ_;
  std::vector<int> totals_;
  std::vector<std::size_t> raise_;
  std::vector<std::size_t> lower_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Basis over 2 * mode_count slots (two polarizations per mode).
FockBasis build_fock_basis(std::size_t mode_count, int n_max);

enum class Ladder { annihilate, create };

/// Matrix of a_slot or a_slot^dagger on the Fock space alone. Creation out of
/// the top sector is dropped (P a^dagger P).
SparseMatrix ladder_matrix(const FockBasis& basis, std::size_t slot, Ladder direction);

/// Applies a_slot (or its adjoint) tensored with the spin identity. The spin
/// dimension is psi.size() / basis.size().
StateVector ladder(const FockBasis& basis, std::size_t slot, Ladder direction, const StateVector& psi);

/// Diagonal operator sum_i n_i diag_i on the Fock space.
SparseHermitianOperator d_gamma(const FockBasis& basis, std::span<const double> diag);

SparseHermitianOperator number_operator(const FockBasis& basis);

/// Phi_S(V) = (a(V) + a^dagger(V)) / sqrt(2), a(V) = sum conj(V_j) a_j,
/// a^dagger(V) = sum V_j a_j^dagger, truncated as P Phi P.
SparseHermitianOperator segal_field(const FockBasis& basis, const Eigen::VectorXcd& v);

/// A (x) I_spin.
SparseMatrix kron_identity(const SparseMatrix& fock_op, Index spin_dim);
/// I_fock (x) S.
SparseMatrix identity_kron(Index fock_dim, const Eigen::MatrixXcd& spin_op);
/// A (x) S.
SparseMatrix kron(const SparseMatrix& fock_op, const Eigen::MatrixXcd& spin_op);

/// Debug dumps: `state_index,occupation,<value columns>`.
void write_basis_csv(std::ostream& out, const FockBasis& basis);
void write_state_csv(std::ostream& out, const FockBasis& basis, const StateVector& psi);
void write_operator_csv(std::ostream& out, const SparseMatrix& op);

}  // namespace photontail
