"""Independent reference values for the unit tests.

Everything here is computed with numpy/scipy from the defining integrals, not
from the library.  Run it to regenerate derived_values.hpp:

    python3 tests/oracles/derive_oracles.py > tests/oracles/derived_values.hpp
"""
import warnings

import numpy as np
from scipy.integrate import quad
from scipy.special import erf

# (b, c) per harmonic, as used by the library
TAB = {3: (1 / 3, 0.035), 5: (0.30, 0.04), 7: (0.29, 0.05), 9: (1 / 3, 0.042),
       11: (0.34, 0.03), 13: (0.35, 0.035), 15: (0.30, 0.035)}
NU = 2 * np.pi * 220e3
warnings.simplefilter("ignore")


def fz_pulse(u, k, b, c, d):
    v = u - 0.5
    beta = d / (np.pi * k * b) * np.sin(np.pi * k / 2) * (erf((v + b) / c) - erf((v - b) / c))
    return np.cos(np.pi * u) + beta * np.sin(k * np.pi * v)


def fz_period(x, k, b, c, d):
    x = x % 1.0
    return fz_pulse(2 * x, k, b, c, d) if x < 0.5 else -fz_pulse(2 * x - 1, k, b, c, d)


def fn_quad(fun, n, pts):
    v, _ = quad(lambda x: fun(x) * np.cos(2 * np.pi * n * x), 0, 1, points=pts, limit=4000,
                epsabs=1e-15, epsrel=1e-13)
    return 2 * v


def modulated(n, k, d):
    b, c = TAB[k]
    pts = [0.25 - b / 2, 0.25 + b / 2, 0.5, 0.75 - b / 2, 0.75 + b / 2]
    return fn_quad(lambda x: fz_period(x, k, b, c, d), n, pts)


def tophat(n, r):
    # constant-Rabi flanks of width r = t_pi / tau centred at x = 1/4 and 3/4
    a1, a2 = 0.25 - r / 2, 0.75 - r / 2

    def f(x):
        if x < a1:
            return 1.0
        if x < a1 + r:
            return np.cos(np.pi * (x - a1) / r)
        if x < a2:
            return -1.0
        if x < a2 + r:
            return -np.cos(np.pi * (x - a2) / r)
        return 1.0
    return fn_quad(f, n, [a1, a1 + r, a2, a2 + r])


def inst(n):
    return 4 / (n * np.pi) * np.sin(n * np.pi / 2)


def so_coeffs(k, d, t_pi, tau, nu, n_max=200):
    b, c = TAB[k]
    om = 2 * np.pi / tau
    fperp = lambda u: np.sqrt(max(0.0, 1 - fz_pulse(u, k, b, c, d) ** 2))
    jp = bp = bpp = 0.0
    for n in range(1, n_max + 1, 2):
        I = quad(lambda t: fperp((tau / 4 + t) / t_pi) * np.cos(n * om * t / 2), 0, t_pi / 2,
                 limit=400, epsabs=1e-16)[0]
        e = (np.cos(n * np.pi) - 1) * 2 / tau * I
        den = 1 - n * n * om * om / (4 * nu * nu)
        s = 1.0 if n % 4 == 1 else -1.0
        jp += 0.5 * e * e / den
        bp += 2 * n * om / nu * e * e / den * s
        bpp += e * e / den * s
    return jp, bp, bpp


def emit(name, value, note):
    if note:
        print(f"// {note}")
    print(f"inline constexpr double {name} = {value:.17g};")


print("#pragma once\n// Generated by derive_oracles.py.\nnamespace oracle {")
emit("f3_instantaneous", inst(3), "(4/3pi) sin(3pi/2)")
emit("f1_tophat_half", tophat(1, 0.5), "top-hat, t_pi = tau/2, n = 1, quadrature")
emit("f3_tophat_quarter", tophat(3, 0.25), "top-hat, t_pi = tau/4, n = 3, quadrature")
emit("f9_G1", modulated(9, 9, 1.915), "modulated k = 9, d = 1.915, n = 9, quadrature")
emit("f5_G4", modulated(5, 5, -0.321), "modulated k = 5, d = -0.321, n = 5, quadrature")
emit("f1_G1", modulated(1, 9, 1.915), "modulated k = 9, d = 1.915, n = 1, quadrature")
emit("f7_G1", modulated(7, 9, 1.915), "modulated k = 9, d = 1.915, n = 7, quadrature")

f = {n: inst(n) for n in range(1, 19)}
jb = sum(f[n] ** 2 / (1 - n * n / (3 * 81)) for n in range(1, 19, 2))
emit("J_inst_k1", f[1] ** 2 / 4, "instantaneous J, k = 1, n_max = 2")
emit("Jb_inst_k9", jb, "instantaneous J^b, k = 9, n_max = 18")
emit("r_inst_k9", jb / sum(f[n] ** 2 for n in range(1, 19, 2)), "ratio r for the same spectrum")

eta = 0.005
emit("tg_dispersive_eta005", np.pi / (8 * eta * eta * NU), "pi / (8 eta^2 nu), eta = 0.005")
emit("xi_G1", 2 * np.pi / 1.641e-3, "2 pi / t_g for t_g = 1.641 ms")
hbar, kB = 1.054571817e-34, 1.380649e-23
emit("Nbar_300K", 1 / np.expm1(hbar * NU / (kB * 300)), "Bose occupation at 300 K")

tpi4, tau4 = 1.150568181818182e-05, 2.3011363636363639e-05
jp, bp, bpp = so_coeffs(5, -0.321124072331677, tpi4, tau4, NU)
emit("G4_j_perp", jp, "second-order coefficients of the G4 pulse")
emit("G4_b_prime", bp, "")
emit("G4_b_dprime", bpp, "")
print("}  // namespace oracle")
