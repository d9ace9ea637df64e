#include "tunnelkit/phase_time.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tunnelkit/errors.hpp"
#include "tunnelkit/quadrature.hpp"
#include "tunnelkit/resonance.hpp"
#include "tunnelkit/transmission.hpp"

namespace tunnelkit {

namespace {

constexpr double kPi = std::numbers::pi;

PhaseTimeBreakdown breakdown(const BarrierSystem& sys, const Kinematics& kin,
                             const HyperbolicState& h) {
  const double c = std::cos(2.0 * kin.k * sys.L);
  const double s = std::sin(2.0 * kin.k * sys.L);
  const double one = h.unity();

  PhaseTimeBreakdown out;
  out.log_scale = h.log_scale;
  out.P_value = (one * one + 2.0 * h.w * one) * sys.L + h.u_prime * h.v - h.u * h.v_prime +
                (h.u_prime * h.w - h.u * h.w_prime) * s + (h.v * h.w_prime - h.v_prime * h.w) * c;
  out.mod_squared = denominator(sys, kin, h).mod_squared;
  out.total = sys.m / (sys.hbar * kin.k) * out.P_value / out.mod_squared;
  return out;
}

}  // namespace

PhaseTimeBreakdown phase_time(const BarrierSystem& sys, double E) {
  const Kinematics kin = kinematics(sys, E);
  return breakdown(sys, kin, hyperbolic_state(kin, sys.a));
}

double transmitted_phase(const BarrierSystem& sys, double E) {
  const Kinematics kin = kinematics(sys, E);
  const DenominatorParts d = denominator(sys, kin, hyperbolic_state(kin, sys.a));
  return std::remainder(kin.k * sys.L - std::atan2(d.D2, d.D1), 2.0 * kPi);
}

double phase_time_numeric(const BarrierSystem& sys, double E, double rel_step) {
  sys.validate();
  if (!(rel_step > 0.0)) throw DomainError("rel_step must be > 0");
  double dE = E * rel_step;
  if (!(E - dE > 0.0) || !(E + dE < sys.U0)) {
    std::ostringstream msg;
    msg << "difference stencil [" << E - dE << ", " << E + dE << "] J leaves (0, U0)";
    throw DomainError(msg.str());
  }
  for (int halvings = 0; halvings <= 40; ++halvings, dE *= 0.5) {
    const double jump =
        std::remainder(transmitted_phase(sys, E + dE) - transmitted_phase(sys, E - dE), 2.0 * kPi);
    if (std::abs(jump) < 0.5 * kPi) return sys.hbar * jump / (2.0 * dE);
  }
  throw UnwrapError("phase jump stays above pi/2 after 40 step halvings");
}

double phase_time_at_resonance(const BarrierSystem& sys, const Resonance& res) {
  const Kinematics kin = kinematics(sys, res.E_r);
  const double p = probability(sys, res.E_r);
  if (std::abs(p - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "not a resonance: |A_T|^2 = " << p << " at E = " << res.E_r << " J";
    throw ValidationError(msg.str());
  }
  const auto [C, S, half_scale] = scaled_hyperbolic(kin.q * sys.a);
  const double one = std::exp(-2.0 * half_scale);
  const double w = 0.25 * kin.sigma * kin.sigma * S * S;
  const double bracket = kin.sigma * kin.sigma * C * S + kin.delta * kin.k * sys.a * one +
                         (one + 2.0 * w) * kin.q * sys.L;
  return sys.m / (sys.hbar * kin.k * kin.q) * bracket * std::exp(2.0 * half_scale);
}

double phase_time_excess(const BarrierSystem& sys, double E) {
  const Kinematics kin = kinematics(sys, E);
  const double d = kin.delta;
  const double d2 = d * d;
  const double s2 = kin.sigma * kin.sigma;
  const double q = kin.q;
  const double x = q * sys.a;
  const double kx = kin.k * x;
  const double qL = q * sys.L;
  const double c = std::cos(2.0 * kin.k * sys.L);
  const double s = std::sin(2.0 * kin.k * sys.L);
  const double y = std::exp(-2.0 * x);

  // numerator coefficients carry a factor 64 q, denominator ones 256
  const double odd = d * (1.0 - c) + 2.0 * s;
  const double even = d * (c - 1.0) + 2.0 * s;
  const double n0 = 8.0 * qL * s2 + 4.0 * (kx / q) * s2 * odd + 2.0 * s2 * s2 * (1.0 - c);
  const double n1 = -16.0 * qL * d2 + 8.0 * (kx / q) * d * (s2 * c + 4.0 - d2) +
                    2.0 * (3.0 * c * d2 * d2 + 16.0 * c * d2 + 16.0 * c - 3.0 * d2 * d2 +
                           4.0 * d2 * d * s - 8.0 * d2 + 16.0 * d * s - 48.0);
  const double n2 = 8.0 * qL * s2 - 4.0 * (kx / q) * s2 * even -
                    2.0 * s2 * (3.0 * d2 * c - 4.0 * c - 3.0 * d2 + 8.0 * d * s + 4.0);
  const double n3 = 2.0 * s2 * (d2 * c - 4.0 * c - d2 + 4.0 * d * s - 4.0);
  const double m0 = 8.0 * s2 * opaque_bracket(kin, sys.L);
  const double m1 = -8.0 * d * s2 * odd;
  const double m2 = -4.0 * (3.0 * c * d2 * d2 + 16.0 * c * d2 + 16.0 * c - 3.0 * d2 * d2 -
                            8.0 * d2 - 48.0);
  const double m3 = 8.0 * d * s2 * even;
  const double m4 = -2.0 * s2 * (d2 * c - 4.0 * c - d2 + 4.0 * d * s - 4.0);

  const double num = n0 + y * (n1 + y * (n2 + y * n3));
  const double den = m0 + y * (m1 + y * (m2 + y * (m3 + y * m4)));
  return sys.m / (sys.hbar * kin.k) * 4.0 * y * num / (q * den);
}

double hartman_limit(const BarrierSystem& sys, double E) {
  const Kinematics kin = kinematics(sys, E);
  return 2.0 * sys.m / (sys.hbar * kin.k * kin.q);
}

double phase_time_opaque(const BarrierSystem& sys, double E) {
  const Kinematics kin = kinematics(sys, E);
  const double x = kin.q * sys.a;
  const double bracket = opaque_bracket(kin, sys.L);
  if (bracket <= 4.0 * kin.sigma * kin.sigma * std::exp(-2.0 * x)) {
    std::ostringstream msg;
    msg << "opaque-barrier bracket " << bracket << " vanishes at qa = " << x
        << " (energy is next to a resonance)";
    throw ResonanceProximityError(msg.str());
  }
  const double lead = 2.0 * sys.m / (sys.hbar * kin.k * kin.q);
  return lead + 4.0 * sys.m / (sys.hbar * kin.k) * sys.L * std::exp(-2.0 * x) / bracket;
}

double average_phase_time(const BarrierSystem& sys, double E_lo, double E_hi, double rel_tol) {
  sys.validate();
  if (!(E_lo > 0.0) || !(E_lo < E_hi) || !(E_hi < sys.U0)) {
    throw DomainError("averaging window must satisfy 0 < E_lo < E_hi < U0");
  }
  const auto tau = [&sys](double E) { return phase_time(sys, E).total; };
  return adaptive_simpson(tau, E_lo, E_hi, rel_tol).value / (E_hi - E_lo);
}

}  // namespace tunnelkit
