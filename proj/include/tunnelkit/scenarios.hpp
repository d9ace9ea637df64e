#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tunnelkit/constants.hpp"
#include "tunnelkit/kinematics.hpp"

namespace tunnelkit {

/// Neutron interference filter: a = 300 Å, U0 = 230 neV, L = 195 Å.
struct NeutronSetup {
  double a_angstrom = 300.0;
  double U0_neV = 230.0;
  double L_angstrom = 195.0;
  double target_E_r_neV = 127.0;
  double mass_ratio_lo = 0.8;
  double mass_ratio_hi = 1.2;

  BarrierSystem system(const PhysicalConstants& c, double mass_ratio) const;
};

/// Measured delays from the cold-neutron experiment. Kept for side-by-side
/// reading only; the model does not try to hit them (beam spread and
/// detector resolution are not modelled).
struct NeutronMeasurement {
  double tau_resonance_s = 2.17e-7;
  double tau_resonance_err_s = 0.2e-7;
  double tau_off_resonance_s = 1.9e-8;
  double half_width_neV = 4.0;
};

struct NeutronReport {
  double E_r_free_mass = 0.0;      // neV
  double fitted_mass_ratio = 0.0;  // m / m0
  double beta = 0.0;               // neV
  double tau_r = 0.0;              // s
  double tau_avg = 0.0;            // s, mean over [E_r - beta, E_r + beta]
  // diagnostics, not serialized by default
  double tau_window_min = 0.0;
  double tau_window_max = 0.0;
  NeutronMeasurement measured;
};

NeutronReport run_neutron_scenario(const PhysicalConstants& constants = {},
                                   const NeutronSetup& setup = {});

/// The five report fields; `annotations` adds the measured values and the
/// window extrema under an "annotations" object.
nlohmann::ordered_json to_json(const NeutronReport& report, bool annotations = false);

/// Reads {"hbar", "m_neutron", "joule_per_neV", "metre_per_angstrom"};
/// absent keys keep CODATA values. Throws nlohmann::json::exception on
/// malformed input and DomainError on non-positive values.
PhysicalConstants constants_from_json(const nlohmann::json& j);

enum class SweepAxis { barrier_width, gap_length };

SweepAxis parse_sweep_axis(const std::string& name);
std::string to_string(SweepAxis axis);

struct SweepRow {
  double sweep_value = 0.0;     // m
  double qa = 0.0;
  double probability = 0.0;
  double tau_exact = 0.0;       // s
  double tau_asymptotic = 0.0;  // s, NaN when flagged
  bool flagged = false;         // opaque expansion rejected next to a resonance
};

struct SweepTable {
  SweepAxis axis = SweepAxis::barrier_width;
  double energy = 0.0;  // J
  std::vector<SweepRow> rows;
};

/// Exact probability and phase-time plus the opaque-barrier expansion at a
/// fixed energy while the barrier width or the gap is varied. Values must be
/// positive and strictly ascending.
SweepTable hartman_sweep(const BarrierSystem& sys, double E, SweepAxis axis,
                         const std::vector<double>& values);

/// Lengths in Å, energy in neV.
nlohmann::ordered_json to_json(const SweepTable& table, const PhysicalConstants& constants = {});

}  // namespace tunnelkit
