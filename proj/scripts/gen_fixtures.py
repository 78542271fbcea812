#!/usr/bin/env python3
"""Regenerate tests/fixtures/mp_values.json with mpmath at 25 digits.

The C++ unit tests compare both the library and the in-test oracles against these
frozen values. Run from the repository root:  python3 scripts/gen_fixtures.py
"""
import json
import os

import mpmath as mp

mp.mp.dps = 25


def ln_s2(z, w1, w2):
    a = 2 * z - w1 - w2

    def f(t):
        if t < mp.mpf("1e-8"):
            return a * (a * a - w1 * w1 - w2 * w2) / (12 * w1 * w2)
        return (mp.sinh(a * t) / (mp.sinh(w1 * t) * mp.sinh(w2 * t)) - a / (w1 * w2 * t)) / (2 * t)

    return mp.quad(f, [0, 0.5, 2, 8, 30, 100, mp.inf])


def s2(z, w1, w2):
    z = mp.mpc(z)
    acc = mp.mpc(1)
    lo, hi = 0.25 * min(w1, w2), w1 + w2 - 0.25 * min(w1, w2)
    while z.real < lo:
        acc *= 2 * mp.sin(mp.pi * z / w2)
        z += w1
    while z.real > hi:
        z -= w1
        acc /= 2 * mp.sin(mp.pi * z / w2)
    return acc * mp.exp(ln_s2(z, w1, w2))


def kg(g, lam, w1, w2):
    return 1 / (s2(g / 2 + 1j * lam, w1, w2) * s2(g / 2 - 1j * lam, w1, w2))


def hat_k(g, lam):
    return mp.gamma((g + 1j * lam) / 2) * mp.gamma((g - 1j * lam) / 2) / (2 ** (1 - g) * mp.gamma(g))


def psi_hr(g, l1, l2, x1, x2):
    f = lambda t: mp.exp(1j * l2 * (x1 + x2 - t) + 1j * l1 * t) / (mp.cosh(x1 - t) * mp.cosh(x2 - t)) ** g
    return mp.quad(f, [-mp.inf, -10, min(x1, x2), max(x1, x2), 10, mp.inf])


def c(v):
    v = mp.mpc(v)
    return [float(v.real), float(v.imag)]


r2 = mp.sqrt(2)
out = {
    "gamma(0.3+0.7i)": c(mp.gamma(mp.mpc(0.3, 0.7))),
    "gamma(4.2-3.1i)": c(mp.gamma(mp.mpc(4.2, -3.1))),
    "gamma(-2.5+0.5i)": c(mp.gamma(mp.mpc(-2.5, 0.5))),
    "gamma(12.5+30i)": c(mp.gamma(mp.mpc(12.5, 30))),
    "lnS(0.7|1,1)": c(ln_s2(mp.mpf("0.7"), 1, 1)),
    "lnS(0.3+0.2i|1,sqrt2)": c(ln_s2(mp.mpc(0.3, 0.2), 1, r2)),
    "lnS(1.1-0.4i|0.7,1.9)": c(ln_s2(mp.mpc(1.1, -0.4), mp.mpf("0.7"), mp.mpf("1.9"))),
    "S(-0.4+0.3i|1,sqrt2)": c(s2(mp.mpc(-0.4, 0.3), 1, r2)),
    "S(3.3+0.1i|1,sqrt2)": c(s2(mp.mpc(3.3, 0.1), 1, r2)),
    "S(0.5+8i|1,1)": c(s2(mp.mpc(0.5, 8), 1, 1)),
    "S(1e-4|1,sqrt2)/1e-4": c(s2(mp.mpf("1e-4"), 1, r2) / mp.mpf("1e-4")),
    "mu_rel(0.7;g=0.8,1,1)": c(
        s2(0.8 + 0.7j, 1, 1) * s2(0.8 - 0.7j, 1, 1) * 4 * mp.sinh(mp.pi * 0.7) ** 2
    ),
    "Kg(0.5;g=0.9,1,sqrt2)": c(kg(mp.mpf("0.9"), mp.mpf("0.5"), 1, r2)),
    "Kg(0.3+0.2i;g=0.9,1,sqrt2)": c(kg(mp.mpf("0.9"), mp.mpc(0.3, 0.2), 1, r2)),
    "hatK(0.9;g=1.4)": c(hat_k(mp.mpf("1.4"), mp.mpf("0.9"))),
    "hatK(2.1+0.3i;g=0.7)": c(hat_k(mp.mpf("0.7"), mp.mpc(2.1, 0.3))),
    "psiHR(g=1;0.4,-0.3;0.2,-0.6)": c(psi_hr(1, mp.mpf("0.4"), mp.mpf("-0.3"), mp.mpf("0.2"), mp.mpf("-0.6"))),
    "psiHR(g=0.7;0.5,0.1;0.3,-0.2)": c(psi_hr(mp.mpf("0.7"), mp.mpf("0.5"), mp.mpf("0.1"), mp.mpf("0.3"), mp.mpf("-0.2"))),
    "betah_rhs(x=0.4;g=0.8,1,sqrt2)": c(
        mp.sqrt(r2) * s2(1 + r2 - mp.mpf("0.8"), 1, r2) * kg(1 + r2 - mp.mpf("0.8"), mp.mpf("0.4"), 1, r2)
    ),
    "orth_rel(l12=0.8;g=0.9,1,sqrt2)": c(
        2 * r2**3 * s2(mp.mpf("0.9"), 1, r2) ** 2
        / (
            s2(mp.mpf("0.9") + 0.8j, 1, r2) * s2(mp.mpf("0.9") - 0.8j, 1, r2)
            * s2(0.8j, 1, r2) * s2(-0.8j, 1, r2)
        )
    ),
    "S(0.6|1,40)": c(s2(mp.mpf("0.6"), 1, 40)),
}

path = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures", "mp_values.json")
with open(path, "w") as fh:
    json.dump(out, fh, indent=1, sort_keys=True)
    fh.write("\n")
print("wrote", os.path.normpath(path))
