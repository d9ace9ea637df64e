#include "tunnelkit/kinematics.hpp"

#include <cmath>
#include <sstream>

#include "tunnelkit/errors.hpp"

namespace tunnelkit {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void PhysicalConstants::validate() const {
  if (!positive_finite(hbar) || !positive_finite(m_neutron) ||
      !positive_finite(joule_per_neV) || !positive_finite(metre_per_angstrom)) {
    throw DomainError("physical constants must be finite and strictly positive");
  }
}

void BarrierSystem::validate() const {
  if (!positive_finite(a)) throw DomainError("barrier width a must be > 0");
  if (!positive_finite(U0)) throw DomainError("barrier height U0 must be > 0");
  if (!std::isfinite(L) || L < 0.0) throw DomainError("gap L must be >= 0");
  if (!positive_finite(m)) throw DomainError("mass m must be > 0");
  if (!positive_finite(hbar)) throw DomainError("hbar must be > 0");
}

Kinematics kinematics(const BarrierSystem& sys, double E) {
  sys.validate();
  if (!(E > 0.0) || !(E < sys.U0)) {
    std::ostringstream msg;
    msg << "energy " << E << " J outside (0, U0 = " << sys.U0 << " J)";
    throw DomainError(msg.str());
  }
  const double two_m_over_hbar2 = 2.0 * sys.m / (sys.hbar * sys.hbar);
  Kinematics kin;
  kin.E = E;
  kin.k = std::sqrt(two_m_over_hbar2 * E);
  kin.q = std::sqrt(two_m_over_hbar2 * (sys.U0 - E));
  const double kq = kin.k * kin.q;
  // q^2 - k^2 and q^2 + k^2 formed from energies to avoid cancellation.
  kin.delta = two_m_over_hbar2 * (sys.U0 - 2.0 * E) / kq;
  kin.sigma = two_m_over_hbar2 * sys.U0 / kq;
  return kin;
}

ScaledHyperbolic scaled_hyperbolic(double x) {
  if (x <= kScaleThreshold) return {std::cosh(x), std::sinh(x), 0.0};
  const double e2 = std::exp(-2.0 * x);
  return {0.5 * (1.0 + e2), 0.5 * (1.0 - e2), x};
}

double HyperbolicState::unity() const { return std::exp(-log_scale); }

HyperbolicState hyperbolic_state(const Kinematics& kin, double a) {
  const auto [C, S, half_scale] = scaled_hyperbolic(kin.q * a);
  const double d = kin.delta;
  const double s2 = kin.sigma * kin.sigma;
  const double k = kin.k;
  const double q = kin.q;
  const double CS = C * S;
  const double SS = S * S;
  const double CC = C * C;

  HyperbolicState h;
  h.log_scale = 2.0 * half_scale;
  h.u = CC - 0.25 * d * d * SS;
  h.v = d * CS;
  h.w = 0.25 * s2 * SS;
  h.u_prime = -(2.0 * a * k / q) * (1.0 - 0.25 * d * d) * CS + (d * s2 / (2.0 * q)) * SS;
  h.v_prime = -(s2 / q) * CS - (d * a * k / q) * (CC + SS);
  h.w_prime = -(d * s2 / (2.0 * q)) * SS - (s2 * a * k / (2.0 * q)) * CS;
  return h;
}

}  // namespace tunnelkit
