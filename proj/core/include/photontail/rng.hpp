#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "photontail/types.hpp"

namespace photontail {

// std::mt19937_64 output is fixed by the standard; the distributions are not,
// so the conversions to uniform and normal variates are done by hand to keep
// seeded runs identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    spare_ = radius * std::sin(2.0 * kPi * u2);
    has_spare_ = true;
    return radius * std::cos(2.0 * kPi * u2);
  }

  cplx complex_normal() {
    const double re = normal();
    return {re, normal()};
  }

  StateVector complex_vector(Index n) {
    StateVector v(n);
    for (Index i = 0; i < n; ++i) v[i] = complex_normal();
    return v;
  }

  Vec3 unit_vector() {
    const double z = 2.0 * uniform() - 1.0;
    const double phi = 2.0 * kPi * uniform();
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {s * std::cos(phi), s * std::sin(phi), z};
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace photontail
