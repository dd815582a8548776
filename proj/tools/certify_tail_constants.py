#!/usr/bin/env python3
# SPDX-License-Identifier: MIT
"""Certify the tail constants used by the global Euler products.

For a prime ideal of norm q, with delta(c) the closed-form local densities:

  (T) 1 - delta(1)               <= 2 / q^2,
  (M) sum_c c delta(c) - 1       <= 12 / q^2,

for every real q >= 5 away from 6 (these densities do not depend on e), and for every
q >= 3 at unramified primes above 3.  Each inequality is reduced to a polynomial in q
with positive denominators cleared; the script checks that the polynomial is positive at
the left endpoint and has no real root to its right (Sturm counting, exact).

It also prints sup q^2 (1 - delta(1)) and sup q^2 (mean - 1) over prime powers in range,
for reference.  Exit status is 0 iff every certificate holds.
"""
import sys

import sympy as sp

q = sp.symbols("q", positive=True)


def away_from_six():
    S = q**8 + q**6 + q**4 + q**2 + 1
    d1 = 1 - q * (6*q**7 + 9*q**6 + 9*q**5 + 7*q**4 + 8*q**3 + 7*q**2 + 9*q + 6) / (6 * (q + 1)**2 * S)
    d2 = q * (2*q**7 + 2*q**6 + q**5 + q**4 + 2*q**3 + q**2 + 2*q + 2) / (2 * (q + 1)**2 * S)
    d3 = q**2 * (q**4 + 1) / (2 * (q + 1) * S)
    d4 = q**3 * (3*q**2 - 2*q + 1) / (6 * (q + 1) * S)
    # delta(c) = K q^{-c} for c >= 5.
    K = (q**10 - 2*q**9 + q**8) / (2 * (q**10 - 1))
    return [d1, d2, d3, d4], K


def above_three_unramified():
    D = q**10 - 1
    d1 = 1 - (q - 1) * (6*q**10 + 9*q**9 + 7*q**8 + 8*q**7 + 7*q**6 + 9*q**5 + 6*q**4 + 6*q + 3) / (6 * q**2 * (q + 1) * D)
    d2 = (q - 1) * (2*q**11 + 2*q**10 + q**9 + 2*q**8 + q**7 + 2*q**6 + 2*q**5 + 2*q**2 - 1) / (2 * q**3 * (q + 1) * D)
    d3 = (q - 1) * (q**10 + q**7 + q - 1) / (2 * q**4 * D)
    d4 = (q - 1) * (q**10 + q**9 + 3*q - 3) / (6 * q**5 * D)
    K = (q - 1)**2 / (2 * q * D)
    return [d1, d2, d3, d4], K


def moments(ds, K):
    x = 1 / q
    tail_mass = K * x**5 / (1 - x)
    tail_mean = K * x**5 * (5 - 4 * x) / (1 - x)**2
    total = sum(ds) + tail_mass
    mean = sum((i + 1) * d for i, d in enumerate(ds)) + tail_mean
    return sp.simplify(total), mean


def certify(expr, left):
    """True iff the rational function expr is > 0 for all real q >= left."""
    num, den = sp.fraction(sp.together(sp.simplify(expr)))
    num = sp.Poly(sp.expand(num), q)
    den = sp.Poly(sp.expand(den), q)
    for poly in (num, den):
        if poly.eval(left) == 0:
            return False
        if poly.count_roots(left, sp.oo) != 0:
            return False
    return (num.eval(left) > 0) == (den.eval(left) > 0)


def main():
    ok = True
    cases = [("away from 6", away_from_six(), 5, [5, 7, 11, 13, 25, 49, 121, 125]),
             ("above 3, e = 1", above_three_unramified(), 3, [3, 9, 27, 81, 243])]
    for name, (ds, K), left, sample in cases:
        total, mean = moments(ds, K)
        normalized = sp.simplify(total - 1) == 0
        t_ok = certify(sp.Rational(2) / q**2 - (1 - ds[0]), left)
        m_ok = certify(sp.Rational(12) / q**2 - (mean - 1), left)
        sup_t = max(float((q**2 * (1 - ds[0])).subs(q, v)) for v in sample)
        sup_m = max(float((q**2 * (mean - 1)).subs(q, v)) for v in sample)
        print(f"{name}: normalized={normalized}  (T) 2/q^2 holds for q>={left}: {t_ok}  "
              f"(M) 12/q^2 holds for q>={left}: {m_ok}  max q^2(1-d1)={sup_t:.4f}  max q^2(mean-1)={sup_m:.4f}")
        ok = ok and normalized and t_ok and m_ok
    print("CERTIFIED" if ok else "FAILED")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
