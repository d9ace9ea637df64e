"""High-precision phase time of a symmetric double barrier.

Differentiates arg(A_T e^{ik(2a+L)}) numerically in mpmath with 80 digits,
straight from the complex amplitude. Used to freeze reference values for
the C++ tests.
"""
import mpmath as mp

mp.mp.dps = 80
HBAR = mp.mpf("1.054571817e-34")
M_N = mp.mpf("1.67492749804e-27")
NEV = mp.mpf("1.602176634e-28")
ANG = mp.mpf("1e-10")


def phase(E, a, U0, L, m):
    k = mp.sqrt(2 * m * E) / HBAR
    q = mp.sqrt(2 * m * (U0 - E)) / HBAR
    d = 2 * m * (U0 - 2 * E) / (HBAR**2 * k * q)
    sg = 2 * m * U0 / (HBAR**2 * k * q)
    C, S = mp.cosh(q * a), mp.sinh(q * a)
    u = C**2 - d**2 / 4 * S**2
    v = d * C * S
    w = sg**2 / 4 * S**2
    D = u + w * mp.cos(2 * k * L) + 1j * (v + w * mp.sin(2 * k * L))
    return k * L - mp.arg(D)


def tau(E, a, U0, L, m):
    return HBAR * mp.diff(lambda e: phase(e, a, U0, L, m), E)


def hartman(E, U0, m):
    k = mp.sqrt(2 * m * E) / HBAR
    q = mp.sqrt(2 * m * (U0 - E)) / HBAR
    return 2 * m / (HBAR * k * q)


if __name__ == "__main__":
    U0, E, m = 230 * NEV, 20 * NEV, M_N
    q = mp.sqrt(2 * m * (U0 - E)) / HBAR
    for qa in (2, 8, 15, 20, 25):
        a = qa / q
        t1 = tau(E, a, U0, 195 * ANG, m)
        t2 = tau(E, a, U0, 390 * ANG, m)
        lead = hartman(E, U0, m)
        print(qa, mp.nstr(t1, 17), mp.nstr(t1 - lead, 17), mp.nstr(t2 - lead, 17),
              "ratio", mp.nstr(abs(t2 - t1) / t1 / mp.e**(-2 * qa), 6))
