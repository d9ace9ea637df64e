"""Frozen reference values used by the C++ kinematics and transmission tests.

Run from this directory: python3 reference_values.py
"""
import mpmath as mp

from phase_time_mp import HBAR, M_N, NEV

mp.mp.dps = 50


def wavenumbers(E, U0, m):
    return mp.sqrt(2 * m * E) / HBAR, mp.sqrt(2 * m * (U0 - E)) / HBAR


def mod_squared(E, a, U0, L, m):
    k, q = wavenumbers(E, U0, m)
    d = 2 * m * (U0 - 2 * E) / (HBAR**2 * k * q)
    sg = 2 * m * U0 / (HBAR**2 * k * q)
    C, S = mp.cosh(q * a), mp.sinh(q * a)
    u = C**2 - d**2 / 4 * S**2
    v = d * C * S
    w = sg**2 / 4 * S**2
    return (u + w * mp.cos(2 * k * L))**2 + (v + w * mp.sin(2 * k * L))**2


if __name__ == "__main__":
    k, q = wavenumbers(127 * NEV, 230 * NEV, M_N)
    print("k, q at 127 neV:", mp.nstr(k, 20), mp.nstr(q, 20))
    sys = [mp.mpf(x) for x in ("1.0733009549503844e-07", "1.0614511062688802e-25",
                               "1.8662042672320817e-08", "1.2610199135119927e-27")]
    a, U0, L, m = sys
    E = mp.mpf("4.103197004685901e-26")
    print("|D|^2 opaque case:", mp.nstr(mod_squared(E, a, U0, L, m), 20))
