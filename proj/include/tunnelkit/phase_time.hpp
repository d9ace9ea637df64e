#pragma once

#include "tunnelkit/kinematics.hpp"

namespace tunnelkit {

struct Resonance;

/// total = (m / hbar k) * P / |D|^2, with
///   P = (1 + 2w) L + u'v - uv' + (u'w - uw') sin(2kL) + (vw' - v'w) cos(2kL).
/// P_value and mod_squared share the factor exp(-2 log_scale).
struct PhaseTimeBreakdown {
  double total = 0.0;        // s
  double P_value = 0.0;      // m
  double mod_squared = 1.0;  // dimensionless
  double log_scale = 0.0;
};

/// Exact Wigner phase-time hbar d arg(A_T e^{ik(2a+L)})/dE from the analytic P formula.
PhaseTimeBreakdown phase_time(const BarrierSystem& sys, double E);

/// Continuous arg(A_T e^{ik(2a+L)}) = kL - arg D, in (-pi, pi].
double transmitted_phase(const BarrierSystem& sys, double E);

/// Central difference hbar [phi(E+dE) - phi(E-dE)] / (2 dE), dE = E rel_step.
/// The phase jump is unwrapped to (-pi, pi]; while it exceeds pi/2 the step
/// is halved (at most 40 times) before giving up with UnwrapError.
/// Throws DomainError if the stencil leaves (0, U0).
double phase_time_numeric(const BarrierSystem& sys, double E, double rel_step = 1e-6);

/// (m / hbar k q) [sigma^2 cosh(qa) sinh(qa) + delta k a + (1 + 2w) q L] at E_r.
/// Throws ValidationError if |A_T(k_r)|^2 differs from 1 by more than 1e-6.
double phase_time_at_resonance(const BarrierSystem& sys, const Resonance& res);

/// tau - 2m/(hbar k q), written as a polynomial in y = e^{-2qa} whose
/// constant term cancels analytically. Stays accurate when the excess
/// sits far below the resolution of phase_time().total.
double phase_time_excess(const BarrierSystem& sys, double E);

/// Hartman limit 2m / (hbar k q) of an opaque double barrier.
double hartman_limit(const BarrierSystem& sys, double E);

/// Two-term opaque-barrier expansion
///   2m/(hbar k q) + (4m/(hbar k)) L e^{-2qa} / bracket
/// with bracket = opaque_bracket(). The second term is the weak gap
/// dependence; it only tracks the order of magnitude of the exact
/// correction. Throws ResonanceProximityError next to a resonance.
double phase_time_opaque(const BarrierSystem& sys, double E);

/// Uniformly weighted mean of phase_time over [E_lo, E_hi] by adaptive
/// Simpson; rel_tol is relative to the result.
double average_phase_time(const BarrierSystem& sys, double E_lo, double E_hi,
                          double rel_tol = 1e-3);

}  // namespace tunnelkit
