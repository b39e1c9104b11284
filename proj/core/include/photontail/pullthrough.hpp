#pragma once

#include <array>
#include <vector>

#include "photontail/surrogate.hpp"
#include "photontail/types.hpp"

namespace photontail {

/// Element of H^3: one state vector per spatial axis of the photon field.
struct AmplitudeVector {
  std::array<StateVector, 3> axis;

  static AmplitudeVector zero(Index dim);
  double norm_squared() const;
  double norm() const;
  /// sum_a k_a axis_a
  StateVector contract(const Vec3& k) const;

  AmplitudeVector& operator+=(const AmplitudeVector& o);
  AmplitudeVector& operator-=(const AmplitudeVector& o);
  AmplitudeVector& operator*=(cplx s);
};

AmplitudeVector operator-(AmplitudeVector a, const AmplitudeVector& b);
AmplitudeVector operator*(cplx s, AmplitudeVector a);

/// a(k) U = -(g/sqrt2) sum_{lambda,m} B_{m,x_lambda}(k) (H - E + |k|)^{-1} f_m^[lambda].
AmplitudeVector photon_amplitude(const SpectralSurrogate& s, const Vec3& k);

/// (g/sqrt2) sum_{lambda,m} |B_{m,x_lambda}(k)| / |k|, an upper bound for
/// ||a(k) U|| since ||f|| = 1 and ||(H - E + |k|)^{-1}|| <= 1/|k|.
double amplitude_bound(const SpectralSurrogate& s, const Vec3& k);

/// ||a_j U + (g/sqrt2) sum c_{m,lambda,j} (H - E + omega_j)^{-1} f_m^[lambda]|| for
/// a surrogate built from an assembled model; zero up to round-off except for
/// the truncation at n_max.
double pullthrough_residual(const SpectralSurrogate& s, std::size_t slot);

/// Root-sum-square of pullthrough_residual over all slots.
double pullthrough_residual_total(const SpectralSurrogate& s);

struct NumberCheck {
  double lhs = 0.0;  // sum_j ||a_j U||^2
  double rhs = 0.0;  // <N U, U>
  double difference() const { return lhs - rhs; }
  bool holds(double rel = 1e-12) const;
};

NumberCheck number_check(const FockBasis& basis, const StateVector& u);
NumberCheck number_check(const SpectralSurrogate& s);

}  // namespace photontail
