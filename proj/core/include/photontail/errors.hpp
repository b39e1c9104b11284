#pragma once

#include <stdexcept>
#include <string>

namespace photontail {

/// Invalid or inconsistent configuration (bad key, out-of-range size, overflow).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (k = 0, z = 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An assembled operator failed a structural check (e.g. Hermiticity).
class AssemblyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Iterative solver did not reach the requested tolerance.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Quadrature failed to meet its error target.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double estimate, double bound)
      : std::runtime_error(what), estimate_(estimate), bound_(bound) {}
  double estimate() const noexcept { return estimate_; }
  double bound() const noexcept { return bound_; }

 private:
  double estimate_;
  double bound_;
};

/// The two lowest eigenvalues are closer than the degeneracy threshold, so the
/// ground state is not unique (e.g. zero external field).
class DegenerateGroundState : public std::runtime_error {
 public:
  DegenerateGroundState(const std::string& what, double lowest, double second)
      : std::runtime_error(what), lowest_(lowest), second_(second) {}
  double lowest() const noexcept { return lowest_; }
  double second() const noexcept { return second_; }

 private:
  double lowest_;
  double second_;
};

}  // namespace photontail
