#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tunnelkit/errors.hpp"
#include "tunnelkit/phase_time.hpp"
#include "tunnelkit/resonance.hpp"
#include "tunnelkit/scatter_oracle.hpp"
#include "tunnelkit/scenarios.hpp"
#include "tunnelkit/transmission.hpp"

namespace py = pybind11;
using namespace tunnelkit;

PYBIND11_MODULE(_tunnelkit, m) {
  m.doc() = "Transmission, resonances and phase-times of a symmetric double barrier (SI units)";

  auto domain_error = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ResonanceProximityError>(m, "ResonanceProximityError", domain_error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_RuntimeError);
  py::register_exception<FitError>(m, "FitError", PyExc_RuntimeError);
  py::register_exception<UnwrapError>(m, "UnwrapError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  py::class_<PhysicalConstants>(m, "PhysicalConstants")
      .def(py::init<>())
      .def_readwrite("hbar", &PhysicalConstants::hbar)
      .def_readwrite("m_neutron", &PhysicalConstants::m_neutron)
      .def_readwrite("joule_per_neV", &PhysicalConstants::joule_per_neV)
      .def_readwrite("metre_per_angstrom", &PhysicalConstants::metre_per_angstrom)
      .def("from_neV", &PhysicalConstants::from_neV)
      .def("to_neV", &PhysicalConstants::to_neV)
      .def("from_angstrom", &PhysicalConstants::from_angstrom)
      .def("to_angstrom", &PhysicalConstants::to_angstrom);

  py::class_<BarrierSystem>(m, "BarrierSystem")
      .def(py::init([](double a, double U0, double L, double mass, double hbar) {
             BarrierSystem s{a, U0, L, mass, hbar};
             s.validate();
             return s;
           }),
           py::arg("a"), py::arg("U0"), py::arg("L"), py::arg("m"),
           py::arg("hbar") = codata::hbar)
      .def_readwrite("a", &BarrierSystem::a)
      .def_readwrite("U0", &BarrierSystem::U0)
      .def_readwrite("L", &BarrierSystem::L)
      .def_readwrite("m", &BarrierSystem::m)
      .def_readwrite("hbar", &BarrierSystem::hbar)
      .def("with_width", &BarrierSystem::with_width)
      .def("with_gap", &BarrierSystem::with_gap)
      .def("with_mass", &BarrierSystem::with_mass)
      .def("__repr__", [](const BarrierSystem& s) {
        return "BarrierSystem(a=" + std::to_string(s.a) + ", U0=" + std::to_string(s.U0) +
               ", L=" + std::to_string(s.L) + ", m=" + std::to_string(s.m) + ")";
      });

  py::class_<Kinematics>(m, "Kinematics")
      .def_readonly("E", &Kinematics::E)
      .def_readonly("k", &Kinematics::k)
      .def_readonly("q", &Kinematics::q)
      .def_readonly("delta", &Kinematics::delta)
      .def_readonly("sigma", &Kinematics::sigma);

  py::class_<HyperbolicState>(m, "HyperbolicState")
      .def_readonly("u", &HyperbolicState::u)
      .def_readonly("v", &HyperbolicState::v)
      .def_readonly("w", &HyperbolicState::w)
      .def_readonly("u_prime", &HyperbolicState::u_prime)
      .def_readonly("v_prime", &HyperbolicState::v_prime)
      .def_readonly("w_prime", &HyperbolicState::w_prime)
      .def_readonly("log_scale", &HyperbolicState::log_scale);

  py::class_<DenominatorParts>(m, "DenominatorParts")
      .def_readonly("D1", &DenominatorParts::D1)
      .def_readonly("D2", &DenominatorParts::D2)
      .def_readonly("mod_squared", &DenominatorParts::mod_squared)
      .def_readonly("log_scale", &DenominatorParts::log_scale)
      .def("log_mod_squared", &DenominatorParts::log_mod_squared);

  py::class_<TransmissionResult>(m, "TransmissionResult")
      .def_readonly("amplitude", &TransmissionResult::amplitude)
      .def_readonly("probability", &TransmissionResult::probability)
      .def_readonly("phase", &TransmissionResult::phase);

  py::class_<PhaseTimeBreakdown>(m, "PhaseTimeBreakdown")
      .def_readonly("total", &PhaseTimeBreakdown::total)
      .def_readonly("P_value", &PhaseTimeBreakdown::P_value)
      .def_readonly("mod_squared", &PhaseTimeBreakdown::mod_squared)
      .def_readonly("log_scale", &PhaseTimeBreakdown::log_scale);

  py::class_<Resonance>(m, "Resonance")
      .def_readonly("E_r", &Resonance::E_r)
      .def_readonly("k_r", &Resonance::k_r)
      .def_readonly("beta", &Resonance::beta)
      .def_readonly("index", &Resonance::index);

  py::class_<ResonanceExpansion>(m, "ResonanceExpansion")
      .def_readonly("D_r", &ResonanceExpansion::D_r)
      .def_readonly("C_r", &ResonanceExpansion::C_r)
      .def_readonly("C_r_mod", &ResonanceExpansion::C_r_mod);

  m.def("kinematics", &kinematics, py::arg("sys"), py::arg("E"));
  m.def("hyperbolic_state", &hyperbolic_state, py::arg("kin"), py::arg("a"));
  m.def("denominator", py::overload_cast<const BarrierSystem&, double>(&denominator),
        py::arg("sys"), py::arg("E"));
  m.def("amplitude", &amplitude, py::arg("sys"), py::arg("E"));
  m.def("probability", &probability, py::arg("sys"), py::arg("E"));
  m.def("probability_opaque", &probability_opaque, py::arg("sys"), py::arg("E"));

  m.def("phase_time", &phase_time, py::arg("sys"), py::arg("E"));
  m.def("phase_time_numeric", &phase_time_numeric, py::arg("sys"), py::arg("E"),
        py::arg("rel_step") = 1e-6);
  m.def("phase_time_at_resonance", &phase_time_at_resonance, py::arg("sys"), py::arg("res"));
  m.def("phase_time_opaque", &phase_time_opaque, py::arg("sys"), py::arg("E"));
  m.def("phase_time_excess", &phase_time_excess, py::arg("sys"), py::arg("E"));
  m.def("hartman_limit", &hartman_limit, py::arg("sys"), py::arg("E"));
  m.def("average_phase_time", &average_phase_time, py::arg("sys"), py::arg("E_lo"),
        py::arg("E_hi"), py::arg("rel_tol") = 1e-3);

  m.def("resonance_residual", &resonance_residual, py::arg("sys"), py::arg("E"));
  m.def(
      "find_resonances",
      [](const BarrierSystem& sys, double E_min, double E_max, std::size_t grid_cells) {
        ResonanceSearchOptions opts;
        opts.grid_cells = grid_cells;
        return find_resonances(sys, E_min, E_max, opts);
      },
      py::arg("sys"), py::arg("E_min"), py::arg("E_max"), py::arg("grid_cells") = 2000);
  m.def("fit_effective_mass", &fit_effective_mass, py::arg("a"), py::arg("U0"), py::arg("L"),
        py::arg("E_target"), py::arg("m_lo"), py::arg("m_hi"), py::arg("hbar") = codata::hbar,
        py::arg("cells") = 256);
  m.def("breit_wigner_width", &breit_wigner_width, py::arg("sys"), py::arg("res"));
  m.def("resonance_expansion", &resonance_expansion, py::arg("sys"), py::arg("res"));
  m.def("bw_probability", &bw_probability, py::arg("res"), py::arg("E"));
  m.def("bw_phase_time", &bw_phase_time, py::arg("sys"), py::arg("res"), py::arg("E"));

  m.def(
      "oracle_transmission",
      [](const BarrierSystem& sys, double E) {
        return oracle::solve(oracle::double_barrier_profile(sys), E).t;
      },
      py::arg("sys"), py::arg("E"),
      "Transfer-matrix transmission amplitude of the double barrier.");

  m.def(
      "run_neutron_scenario",
      [](const PhysicalConstants& c, bool annotations) {
        return to_json(run_neutron_scenario(c), annotations).dump();
      },
      py::arg("constants") = PhysicalConstants{}, py::arg("annotations") = false,
      "NeutronReport as a JSON string (energies in neV, times in s).");
  m.def(
      "hartman_sweep",
      [](const BarrierSystem& sys, double E, const std::string& axis,
         const std::vector<double>& values) {
        return to_json(hartman_sweep(sys, E, parse_sweep_axis(axis), values)).dump();
      },
      py::arg("sys"), py::arg("E"), py::arg("axis"), py::arg("values"),
      "SweepTable as a JSON string (lengths in Å, energy in neV).");
}
