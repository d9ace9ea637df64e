#pragma once

#include <stdexcept>
#include <string>

namespace tunnelkit {

/// Input outside the supported regime (E <= 0, E >= U0, non-positive geometry).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An asymptotic expansion was asked for where it does not apply
/// (e.g. the opaque-barrier bracket vanishes next to a resonance).
class ResonanceProximityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A computed resonance failed certification, or a resonance-derived
/// quantity came out degenerate.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter inversion could not bracket a root.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical phase differentiation could not resolve the phase jump.
class UnwrapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature hit its depth cap before meeting the tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial_estimate)
      : std::runtime_error(what), partial_estimate_(partial_estimate) {}

  double partial_estimate() const noexcept { return partial_estimate_; }

 private:
  double partial_estimate_;
};

}  // namespace tunnelkit
