#pragma once

#include <complex>

#include "tunnelkit/kinematics.hpp"

namespace tunnelkit {

/// D = D1 + i D2 = u + w cos(2kL) + i [v + w sin(2kL)].
/// D1, D2 carry the factor exp(-log_scale) and the moduli carry
/// exp(-2 log_scale); log_scale is zero for qa <= kScaleThreshold.
///
/// mod_squared is D1^2 + D2^2. mod_squared_closed_form is
/// 1 + 2w[1 + w + u cos(2kL) + v sin(2kL)]; its bracket cancels next to an
/// opaque resonance, so its rounding error grows like e^{4qa} / |D|^2 and it
/// is kept only as an independent cross-check.
struct DenominatorParts {
  double D1 = 1.0;
  double D2 = 0.0;
  double mod_squared = 1.0;
  double mod_squared_closed_form = 1.0;
  double log_scale = 0.0;

  /// ln |D|^2, finite for any barrier opacity.
  double log_mod_squared() const;
  /// The unscaled complex D (overflows to inf for very opaque barriers).
  std::complex<double> value() const;
};

struct TransmissionResult {
  std::complex<double> amplitude;  // exp(-2ika)/D, origin at the left barrier edge
  double probability = 1.0;        // |amplitude|^2 = 1/|D|^2
  double phase = 0.0;              // arg(amplitude) in (-pi, pi]; survives underflow of amplitude
};

DenominatorParts denominator(const BarrierSystem& sys, double E);

/// Same as above from precomputed state; used by the phase-time code.
DenominatorParts denominator(const BarrierSystem& sys, const Kinematics& kin,
                             const HyperbolicState& hyp);

TransmissionResult amplitude(const BarrierSystem& sys, double E);

double probability(const BarrierSystem& sys, double E);

/// Bracket of the opaque-barrier expansion,
/// sigma^2/4 + (1 - delta^2/4) cos(2kL) + delta sin(2kL) >= 0.
double opaque_bracket(const Kinematics& kin, double L);

/// Opaque-barrier transmission probability
///   32 sigma^-2 exp(-4qa) / [opaque_bracket].
/// The bracket vanishes at the opaque-limit resonances; it is rejected with
/// ResonanceProximityError when it falls below 4 sigma^2 exp(-2qa), the size
/// of the terms the expansion drops.
double probability_opaque(const BarrierSystem& sys, double E);

}  // namespace tunnelkit
