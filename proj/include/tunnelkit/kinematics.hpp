#pragma once

#include "tunnelkit/constants.hpp"

namespace tunnelkit {

/// Two equal rectangular barriers (width a, height U0) separated by a
/// zero-potential gap L, traversed by a particle of mass m. SI units.
struct BarrierSystem {
  double a = 0.0;   // m
  double U0 = 0.0;  // J
  double L = 0.0;   // m
  double m = 0.0;   // kg
  double hbar = codata::hbar;

  /// Throws DomainError unless a > 0, U0 > 0, L >= 0, m > 0, hbar > 0.
  void validate() const;

  BarrierSystem with_width(double width) const {
    BarrierSystem s = *this;
    s.a = width;
    return s;
  }
  BarrierSystem with_gap(double gap) const {
    BarrierSystem s = *this;
    s.L = gap;
    return s;
  }
  BarrierSystem with_mass(double mass) const {
    BarrierSystem s = *this;
    s.m = mass;
    return s;
  }
};

/// Wave quantities at energy E below the barrier top.
struct Kinematics {
  double E = 0.0;      // J
  double k = 0.0;      // 1/m, sqrt(2mE)/hbar
  double q = 0.0;      // 1/m, sqrt(2m(U0-E))/hbar
  double delta = 0.0;  // (q^2 - k^2)/(kq)
  double sigma = 0.0;  // (k^2 + q^2)/(kq); sigma^2 = delta^2 + 4
};

/// Throws DomainError unless 0 < E < U0.
Kinematics kinematics(const BarrierSystem& sys, double E);

/// cosh(x) and sinh(x) sharing a common factor exp(-log_scale).
/// For x above kScaleThreshold the pair is stored as
/// ((1 + e^{-2x})/2, (1 - e^{-2x})/2) with log_scale = x.
struct ScaledHyperbolic {
  double cosh = 1.0;
  double sinh = 0.0;
  double log_scale = 0.0;
};

/// Above this qa the hyperbolic products are carried with an explicit
/// exp(2qa) scale. |D|^2 grows like e^{4qa}, so plain doubles stop at qa ~ 177.
inline constexpr double kScaleThreshold = 100.0;

ScaledHyperbolic scaled_hyperbolic(double x);

/// u, v, w and their k-derivatives. Every member is the true value times
/// exp(-log_scale); log_scale is 0 unless qa > kScaleThreshold, in which
/// case it is 2qa. The constant 1 in identities such as u^2+v^2 = (1+w)^2
/// must then be read as unity() = exp(-log_scale).
struct HyperbolicState {
  double u = 1.0;
  double v = 0.0;
  double w = 0.0;
  double u_prime = 0.0;  // m
  double v_prime = 0.0;  // m
  double w_prime = 0.0;  // m
  double log_scale = 0.0;

  double unity() const;
};

/// Evaluates
///   u = cosh^2(qa) - (delta^2/4) sinh^2(qa)
///   v = delta cosh(qa) sinh(qa)
///   w = (sigma^2/4) sinh^2(qa)
/// and their exact derivatives in k, with C = cosh(qa), S = sinh(qa):
///   u' = -(2ak/q)(1 - delta^2/4) C S + (delta sigma^2 / 2q) S^2
///   v' = -(sigma^2/q) C S - (delta a k / q)(C^2 + S^2)
///   w' = -(delta sigma^2 / 2q) S^2 - (sigma^2 a k / 2q) C S
/// obtained from dq/dk = -k/q, d(delta)/dk = -sigma^2/q and
/// d(sigma)/dk = -delta sigma / q.
HyperbolicState hyperbolic_state(const Kinematics& kin, double a);

}  // namespace tunnelkit
