#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <Eigen/SparseCore>

namespace photontail {

using cplx = std::complex<double>;
using Index = Eigen::Index;

using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;

/// Complex amplitudes over the Fock (x) spin product basis. The Fock index
/// varies slowest: component (f, s) lives at f * spin_dim + s.
using StateVector = Eigen::VectorXcd;

using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

}  // namespace photontail
