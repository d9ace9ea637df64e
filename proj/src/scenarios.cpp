#include "tunnelkit/scenarios.hpp"

#include <cmath>
#include <limits>

#include "tunnelkit/errors.hpp"
#include "tunnelkit/phase_time.hpp"
#include "tunnelkit/resonance.hpp"
#include "tunnelkit/transmission.hpp"

namespace tunnelkit {

BarrierSystem NeutronSetup::system(const PhysicalConstants& c, double mass_ratio) const {
  BarrierSystem sys{c.from_angstrom(a_angstrom), c.from_neV(U0_neV), c.from_angstrom(L_angstrom),
                    mass_ratio * c.m_neutron, c.hbar};
  sys.validate();
  return sys;
}

NeutronReport run_neutron_scenario(const PhysicalConstants& constants, const NeutronSetup& setup) {
  constants.validate();
  NeutronReport report;

  const BarrierSystem free_mass = setup.system(constants, 1.0);
  const double window_lo = constants.from_neV(1.0);
  const double window_hi = free_mass.U0 - constants.from_neV(1.0);
  const auto free_res = find_resonances(free_mass, window_lo, window_hi);
  if (free_res.empty()) throw ValidationError("no resonance at the free neutron mass");
  report.E_r_free_mass = constants.to_neV(free_res.front().E_r);

  const double E_target = constants.from_neV(setup.target_E_r_neV);
  const double m = fit_effective_mass(
      free_mass.a, free_mass.U0, free_mass.L, E_target, setup.mass_ratio_lo * constants.m_neutron,
      setup.mass_ratio_hi * constants.m_neutron, constants.hbar);
  report.fitted_mass_ratio = m / constants.m_neutron;

  const BarrierSystem fitted = free_mass.with_mass(m);
  const Resonance res = make_resonance(fitted, E_target);
  report.beta = constants.to_neV(res.beta);
  report.tau_r = phase_time_at_resonance(fitted, res);

  const double lo = res.E_r - res.beta;
  const double hi = res.E_r + res.beta;
  report.tau_avg = average_phase_time(fitted, lo, hi);

  report.tau_window_min = std::numeric_limits<double>::infinity();
  report.tau_window_max = -std::numeric_limits<double>::infinity();
  constexpr int kSamples = 401;
  for (int i = 0; i < kSamples; ++i) {
    const double E = lo + (hi - lo) * i / (kSamples - 1);
    const double tau = phase_time(fitted, E).total;
    report.tau_window_min = std::min(report.tau_window_min, tau);
    report.tau_window_max = std::max(report.tau_window_max, tau);
  }
  return report;
}

nlohmann::ordered_json to_json(const NeutronReport& report, bool annotations) {
  nlohmann::ordered_json j = {
      {"E_r_free_mass", report.E_r_free_mass},
      {"fitted_mass_ratio", report.fitted_mass_ratio},
      {"beta", report.beta},
      {"tau_r", report.tau_r},
      {"tau_avg", report.tau_avg},
  };
  if (annotations) {
    j["annotations"] = {
        {"measured_tau_resonance_s", report.measured.tau_resonance_s},
        {"measured_tau_resonance_err_s", report.measured.tau_resonance_err_s},
        {"measured_tau_off_resonance_s", report.measured.tau_off_resonance_s},
        {"measured_half_width_neV", report.measured.half_width_neV},
        {"tau_window_min", report.tau_window_min},
        {"tau_window_max", report.tau_window_max},
    };
  }
  return j;
}

PhysicalConstants constants_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("constants document must be a JSON object");
  PhysicalConstants c;
  c.hbar = j.value("hbar", c.hbar);
  c.m_neutron = j.value("m_neutron", c.m_neutron);
  c.joule_per_neV = j.value("joule_per_neV", c.joule_per_neV);
  c.metre_per_angstrom = j.value("metre_per_angstrom", c.metre_per_angstrom);
  c.validate();
  return c;
}

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "barrier_width") return SweepAxis::barrier_width;
  if (name == "gap_length") return SweepAxis::gap_length;
  throw DomainError("unknown sweep axis '" + name + "' (barrier_width | gap_length)");
}

std::string to_string(SweepAxis axis) {
  return axis == SweepAxis::barrier_width ? "barrier_width" : "gap_length";
}

SweepTable hartman_sweep(const BarrierSystem& sys, double E, SweepAxis axis,
                         const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) throw DomainError("sweep values must be positive");
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw DomainError("sweep values must be strictly ascending");
    }
  }
  SweepTable table;
  table.axis = axis;
  table.energy = E;
  table.rows.reserve(values.size());
  for (double value : values) {
    const BarrierSystem s =
        axis == SweepAxis::barrier_width ? sys.with_width(value) : sys.with_gap(value);
    SweepRow row;
    row.sweep_value = value;
    row.qa = kinematics(s, E).q * s.a;
    row.probability = probability(s, E);
    row.tau_exact = phase_time(s, E).total;
    try {
      row.tau_asymptotic = phase_time_opaque(s, E);
    } catch (const ResonanceProximityError&) {
      row.flagged = true;
      row.tau_asymptotic = std::numeric_limits<double>::quiet_NaN();
    }
    table.rows.push_back(row);
  }
  return table;
}

nlohmann::ordered_json to_json(const SweepTable& table, const PhysicalConstants& constants) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const SweepRow& r : table.rows) {
    const nlohmann::ordered_json asymptotic =
        r.flagged ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.tau_asymptotic);
    rows.push_back({
        {"sweep_value", constants.to_angstrom(r.sweep_value)},
        {"qa", r.qa},
        {"probability", r.probability},
        {"tau_exact", r.tau_exact},
        {"tau_asymptotic", asymptotic},
        {"flagged", r.flagged},
    });
  }
  return {{"axis", to_string(table.axis)},
          {"energy_neV", constants.to_neV(table.energy)},
          {"rows", rows}};
}

}  // namespace tunnelkit
