#include "tunnelkit/transmission.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tunnelkit/errors.hpp"

namespace tunnelkit {

double DenominatorParts::log_mod_squared() const {
  return std::log(mod_squared) + 2.0 * log_scale;
}

std::complex<double> DenominatorParts::value() const {
  const double f = std::exp(log_scale);
  return {D1 * f, D2 * f};
}

DenominatorParts denominator(const BarrierSystem& sys, const Kinematics& kin,
                             const HyperbolicState& hyp) {
  const double c = std::cos(2.0 * kin.k * sys.L);
  const double s = std::sin(2.0 * kin.k * sys.L);
  const double one = hyp.unity();

  DenominatorParts d;
  d.log_scale = hyp.log_scale;
  d.D1 = hyp.u + hyp.w * c;
  d.D2 = hyp.v + hyp.w * s;
  d.mod_squared = d.D1 * d.D1 + d.D2 * d.D2;
  // scaled: e^{-2l} + 2 w~ (e^{-l} + w~ + u~ c + v~ s)
  d.mod_squared_closed_form = one * one + 2.0 * hyp.w * (one + hyp.w + hyp.u * c + hyp.v * s);
  return d;
}

DenominatorParts denominator(const BarrierSystem& sys, double E) {
  const Kinematics kin = kinematics(sys, E);
  return denominator(sys, kin, hyperbolic_state(kin, sys.a));
}

TransmissionResult amplitude(const BarrierSystem& sys, double E) {
  const Kinematics kin = kinematics(sys, E);
  const DenominatorParts d = denominator(sys, kin, hyperbolic_state(kin, sys.a));

  TransmissionResult r;
  r.probability = std::exp(-d.log_mod_squared());
  r.phase = std::remainder(-2.0 * kin.k * sys.a - std::atan2(d.D2, d.D1),
                           2.0 * std::numbers::pi);
  r.amplitude = std::polar(std::sqrt(r.probability), r.phase);
  return r;
}

double probability(const BarrierSystem& sys, double E) { return amplitude(sys, E).probability; }

double opaque_bracket(const Kinematics& kin, double L) {
  const double d = kin.delta;
  return 0.25 * kin.sigma * kin.sigma + (1.0 - 0.25 * d * d) * std::cos(2.0 * kin.k * L) +
         d * std::sin(2.0 * kin.k * L);
}

double probability_opaque(const BarrierSystem& sys, double E) {
  const Kinematics kin = kinematics(sys, E);
  const double x = kin.q * sys.a;
  const double s2 = kin.sigma * kin.sigma;
  const double bracket = opaque_bracket(kin, sys.L);
  if (bracket <= 4.0 * s2 * std::exp(-2.0 * x)) {
    std::ostringstream msg;
    msg << "opaque-barrier bracket " << bracket << " vanishes at qa = " << x
        << " (energy is next to a resonance)";
    throw ResonanceProximityError(msg.str());
  }
  return 32.0 / s2 * std::exp(-4.0 * x) / bracket;
}

}  // namespace tunnelkit
