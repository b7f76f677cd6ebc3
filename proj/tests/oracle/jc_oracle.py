#!/usr/bin/env python3
# Copyright 2026 The qjump Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent reference values for the damped JC tests.

Exact amplitude: matrix exponential of the 2x2 amplitude system at 40 digits.
TCL coefficients: closed forms at 40 digits, second order also by direct
quadrature of the kernel. Fourth-order shift: brute-force composite
Gauss-Legendre over the ordered simplex 0 < t3 < t2 < t1 < t.
Populations under a time-local rate: exp(-int gamma).

Run: python3 tests/oracle/jc_oracle.py  (values are frozen in tests/unit).
"""
import mpmath as mp
import numpy as np

mp.mp.dps = 40


def kernel(p, t):
    g0, lam, dl = p
    return g0 * lam * mp.e ** (-lam * t) * mp.cos(dl * t), g0 * lam * mp.e ** (-lam * t) * mp.sin(dl * t)


def gamma2(p, t):
    g0, lam, dl = p
    gm = g0 * lam**2 / (lam**2 + dl**2)
    return gm * (1 - mp.e ** (-lam * t) * (mp.cos(dl * t) - dl / lam * mp.sin(dl * t)))


def s2(p, t):
    g0, lam, dl = p
    gm = g0 * lam**2 / (lam**2 + dl**2)
    return gm * (dl / lam - mp.e ** (-lam * t) * (mp.sin(dl * t) + dl / lam * mp.cos(dl * t)))


def gamma4(p, t):
    g0, lam, dl = p
    r = mp.mpf(dl) / lam
    e = mp.e ** (-lam * t)
    pref = g0**2 * lam**5 * e / (2 * (lam**2 + dl**2) ** 3)
    brace = ((1 - 3 * r**2) * (mp.e ** (lam * t) - e * mp.cos(2 * dl * t))
             - 2 * (1 - r**4) * lam * t * mp.cos(dl * t)
             + 4 * (1 + r**2) * dl * t * mp.sin(dl * t)
             + r * (3 - r**2) * e * mp.sin(2 * dl * t))
    return gamma2(p, t) + pref * brace


def exact(p, t):
    g0, lam, dl = p
    m = mp.matrix([[0, -g0 * lam / 2], [1, -(lam - 1j * dl)]])
    v = mp.expm(m * t) * mp.matrix([1, 0])
    c1, b = v[0], v[1]
    c1dot = -g0 * lam / 2 * b
    ratio = c1dot / c1
    return c1, -2 * mp.re(ratio), -2 * mp.im(ratio)


def population(rate, p, t):
    if t == 0:
        return mp.mpf(1)
    pts = mp.linspace(0, t, 41)
    return mp.e ** (-mp.quad(lambda s: rate(p, s), pts))


def gl(panels, n, a, b):
    x, w = np.polynomial.legendre.leggauss(n)
    edges = np.linspace(a, b, panels + 1)
    xs = ((edges[:-1, None] + edges[1:, None]) / 2 + (edges[1:, None] - edges[:-1, None]) / 2 * x).ravel()
    ws = ((edges[1:, None] - edges[:-1, None]) / 2 * w).ravel()
    return xs, ws


def s4_bruteforce(p, t, panels=24, n=10):
    """s2 + 1/2 int [Psi(t-t2)Phi(t1-t3) + Phi(t-t2)Psi(t1-t3)
    + Psi(t-t3)Phi(t1-t2) + Phi(t-t3)Psi(t1-t2)] on the ordered simplex."""
    g0, lam, dl = p

    def phi(s):
        return g0 * lam * np.exp(-lam * s) * np.cos(dl * s)

    def psi(s):
        return g0 * lam * np.exp(-lam * s) * np.sin(dl * s)

    total = 0.0
    x1, w1 = gl(panels, n, 0.0, t)
    for a, wa in zip(x1, w1):
        x2, w2 = gl(panels, n, 0.0, a)
        u3, v3 = np.polynomial.legendre.leggauss(n)
        # t3 in [0, t2] on `panels` panels for every t2
        edges = np.linspace(0.0, 1.0, panels + 1)
        base = ((edges[:-1, None] + edges[1:, None]) / 2 + (edges[1:, None] - edges[:-1, None]) / 2 * u3).ravel()
        bw = ((edges[1:, None] - edges[:-1, None]) / 2 * v3).ravel()
        t2 = x2[:, None]
        t3 = t2 * base[None, :]
        w3 = t2 * bw[None, :]
        f = (psi(t - t2) * phi(a - t3) + phi(t - t2) * psi(a - t3)
             + psi(t - t3) * phi(a - t2) + phi(t - t3) * psi(a - t2))
        total += wa * np.sum(w2[:, None] * w3 * f)
    return float(s2(p, t)) + 0.5 * total


def main():
    res = (1, 5, 0)
    det = (65, 19.5, 156)
    print("# resonant g0=1 l=5")
    for t in [0.1, 0.5, 1.0, 2.0, 3.0]:
        c1, g, s = exact(res, t)
        print(f"t={t}: gamma2={mp.nstr(gamma2(res, t), 17)} gamma4={mp.nstr(gamma4(res, t), 17)} "
              f"gamma_exact={mp.nstr(g, 17)} c1={mp.nstr(mp.re(c1), 17)} "
              f"rho11_exact={mp.nstr(abs(c1)**2, 17)} rho11_tcl4={mp.nstr(population(gamma4, res, t), 17)} "
              f"rho11_tcl2={mp.nstr(population(gamma2, res, t), 17)}")
    print("# detuned g0=65 l=19.5 D=156")
    for t in [0.02, 0.05, 0.1, 0.25, 0.5, 1.0]:
        c1, g, s = exact(det, t)
        print(f"t={t}: gamma2={mp.nstr(gamma2(det, t), 17)} s2={mp.nstr(s2(det, t), 17)} "
              f"gamma4={mp.nstr(gamma4(det, t), 17)} gamma_exact={mp.nstr(g, 17)} s_exact={mp.nstr(s, 17)} "
              f"rho11_exact={mp.nstr(abs(c1)**2, 17)} rho11_tcl4={mp.nstr(population(gamma4, det, t), 17)}")
    for t in [0.05, 0.2, 0.4]:
        print(f"s4 t={t}: {s4_bruteforce(det, t):.15g} (refined {s4_bruteforce(det, t, 48, 10):.15g})")


if __name__ == "__main__":
    main()
