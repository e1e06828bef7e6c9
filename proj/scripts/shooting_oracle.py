#!/usr/bin/env python3
"""ODE shooting oracle for the 1D p-Laplacian eigenvalues and the first
nontrivial asymmetric-eigenvalue curve on (0, 1) with Dirichlet ends.

Solves  -(|u'|^(p-2) u')' = lam |u|^(p-2) u  by shooting from u(0) = 0,
flux v(0) = 1, where v = |u'|^(p-2) u'.  The k-th Dirichlet eigenvalue is
the lam whose k-th zero of u lands on x = 1.  The closed forms

    lam_k = pi_p^p * k^p,   pi_p = 2*pi*(p-1)^(1/p) / (p*sin(pi/p))

and the first-curve relation

    (lam_1/a)^(1/p) + (lam_1/b)^(1/p) = 1

are cross-checked against the shot values.  Run this before trusting any
p != 2 reference value used in the test suites.
"""

import argparse
import math

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq


def pi_p(p: float) -> float:
    return 2.0 * math.pi * (p - 1.0) ** (1.0 / p) / (p * math.sin(math.pi / p))


def lam_closed(p: float, k: int) -> float:
    return (k * pi_p(p)) ** p


def shoot_zeros(p: float, lam: float, n_zeros: int, x_max: float = 4.0):
    """Integrate the eigen-ODE and return the first n_zeros zeros of u."""
    pc = p / (p - 1.0)  # conjugate exponent

    def rhs(_x, y):
        u, v = y
        du = np.sign(v) * np.abs(v) ** (pc - 1.0)
        dv = -lam * np.sign(u) * np.abs(u) ** (p - 1.0)
        return [du, dv]

    def hit_zero(_x, y):
        return y[0]

    hit_zero.direction = 0.0

    sol = solve_ivp(rhs, (1e-14, x_max), [1e-14, 1.0], events=hit_zero,
                    rtol=1e-11, atol=1e-13, max_step=1e-2, dense_output=False)
    zeros = [z for z in sol.t_events[0] if z > 1e-6]
    if len(zeros) < n_zeros:
        raise RuntimeError(f"only {len(zeros)} zeros found for lam={lam}")
    return zeros[:n_zeros]


def eigenvalue_by_shooting(p: float, k: int) -> float:
    """lam such that the k-th zero of the shot solution sits at x = 1."""
    target = lam_closed(p, k)

    def gap(lam):
        return shoot_zeros(p, lam, k)[k - 1] - 1.0

    return brentq(gap, 0.5 * target, 2.0 * target, xtol=1e-10, rtol=1e-12)


def first_zero(p: float, lam: float) -> float:
    return shoot_zeros(p, lam, 1)[0]


def curve_c_by_shooting(p: float, s: float, lam1: float) -> float:
    """c such that a positive hump of width T(s+c) plus a negative hump of
    width T(c) tile (0,1); hump widths come from the shot first zero."""

    def width_sum(c):
        return first_zero(p, s + c) + first_zero(p, c) - 1.0

    return brentq(width_sum, 1.0001 * lam1, 60.0 * lam1, xtol=1e-9)


def curve_c_algebraic(p: float, s: float, lam1: float) -> float:
    def rel(c):
        return (lam1 / (s + c)) ** (1.0 / p) + (lam1 / c) ** (1.0 / p) - 1.0

    return brentq(rel, 1.0001 * lam1, 60.0 * lam1, xtol=1e-12)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=float, nargs="*", default=[2.0, 1.5, 3.0])
    args = ap.parse_args()

    failures = 0
    for p in args.p:
        l1_closed, l2_closed = lam_closed(p, 1), lam_closed(p, 2)
        l1_shot = eigenvalue_by_shooting(p, 1)
        l2_shot = eigenvalue_by_shooting(p, 2)
        e1 = abs(l1_shot - l1_closed) / l1_closed
        e2 = abs(l2_shot - l2_closed) / l2_closed
        ok = e1 < 1e-7 and e2 < 1e-7
        failures += not ok
        print(f"p={p:4g}  lam1: shot={l1_shot:.9f} closed={l1_closed:.9f} rel={e1:.2e}")
        print(f"p={p:4g}  lam2: shot={l2_shot:.9f} closed={l2_closed:.9f} rel={e2:.2e}"
              f"  [{'OK' if ok else 'MISMATCH'}]")

        # first-zero scaling law x1(lam) = (lam1/lam)^(1/p)
        for lam in (1.7 * l1_closed, 5.0 * l1_closed):
            x1 = first_zero(p, lam)
            x1_ref = (l1_closed / lam) ** (1.0 / p)
            e = abs(x1 - x1_ref)
            failures += not (e < 1e-7)
            print(f"p={p:4g}  x1({lam:9.4f}) = {x1:.9f}  scaling={x1_ref:.9f} "
                  f"err={e:.2e}")

        # curve samples: shooting vs algebraic relation
        for s in (0.0, l1_closed, 5.0 * l1_closed):
            c_shot = curve_c_by_shooting(p, s, l1_closed)
            c_alg = curve_c_algebraic(p, s, l1_closed)
            e = abs(c_shot - c_alg) / c_alg
            failures += not (e < 1e-6)
            print(f"p={p:4g}  c(s={s:9.4f}): shot={c_shot:.7f} "
                  f"algebraic={c_alg:.7f} rel={e:.2e}")
        print()

    # decay ratio of the first curve toward its horizontal asymptote
    for p in (2.0, 1.5):
        l1 = lam_closed(p, 1)
        c0 = curve_c_algebraic(p, 0.0, l1)
        c5 = curve_c_algebraic(p, 5.0 * l1, l1)
        print(f"p={p:4g}  (c(5*lam1)-lam1)/(c(0)-lam1) = "
              f"{(c5 - l1) / (c0 - l1):.4f}")

    print("\nshooting oracle:", "ALL OK" if failures == 0 else f"{failures} FAILURES")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
