"""Double-barrier tunneling: transmission, resonances and Wigner phase-times."""

import json as _json

from ._tunnelkit import *  # noqa: F401,F403
from ._tunnelkit import BarrierSystem, PhysicalConstants
from ._tunnelkit import hartman_sweep as _hartman_sweep
from ._tunnelkit import run_neutron_scenario as _run_neutron_scenario

__all__ = ["neutron_system", "neutron_report", "sweep"]


def neutron_system(a_angstrom=300.0, U0_neV=230.0, L_angstrom=195.0, mass_ratio=1.0,
                   constants=None):
    """BarrierSystem in SI from the neutron-filter units (Å, neV, m/m0)."""
    c = constants or PhysicalConstants()
    return BarrierSystem(a=c.from_angstrom(a_angstrom), U0=c.from_neV(U0_neV),
                         L=c.from_angstrom(L_angstrom), m=mass_ratio * c.m_neutron,
                         hbar=c.hbar)


def neutron_report(constants=None, annotations=False):
    return _json.loads(_run_neutron_scenario(constants or PhysicalConstants(), annotations))


def sweep(sys, E, axis, values):
    return _json.loads(_hartman_sweep(sys, E, axis, list(values)))
