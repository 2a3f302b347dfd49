"""Pure-Python kernel lane: gmpy2 scalar arithmetic, interpreted loops.

Semantics match ``helmflow.kernels._fast`` (the Cython lane); the compiled
lane works at the MPFR level and may differ from these correctly-rounded
mpc operations in the last few ulps.  All functions assume the caller has
set the gmpy2 context precision.
"""

from __future__ import annotations

import gmpy2

BACKEND = "pure"


def cauchy_coeff(a, b, n):
    """Order-``n`` coefficient of the product of series ``a`` and ``b``.

    ``sum(a[m] * b[n-m])`` over the index range both sequences cover.
    """
    acc = gmpy2.mpc(0)
    lo = max(0, n - len(b) + 1)
    hi = min(n, len(a) - 1)
    for m in range(lo, hi + 1):
        acc += a[m] * b[n - m]
    return acc


def series_mul(a, b, order):
    """Truncated Cauchy product of ``a`` and ``b`` through ``order``."""
    return [cauchy_coeff(a, b, n) for n in range(order + 1)]


def reciprocal_next(c, d, n):
    """Order-``n`` coefficient of ``1/c(z)`` given ``d[0:n]`` already known."""
    if n == 0:
        return 1 / c[0]
    acc = gmpy2.mpc(0)
    for m in range(n):
        acc += c[n - m] * d[m]
    return -acc / c[0]


def horner(coeffs, z):
    """Evaluate ``sum(coeffs[i] * z**i)``."""
    acc = gmpy2.mpc(0)
    for ck in reversed(coeffs):
        acc = acc * z + ck
    return acc


def horner2(coeffs, z):
    """Evaluate a polynomial and its derivative at ``z``."""
    p = gmpy2.mpc(0)
    dp = gmpy2.mpc(0)
    for ck in reversed(coeffs):
        dp = dp * z + p
        p = p * z + ck
    return p, dp


def aberth_sweep(coeffs, roots):
    """One simultaneous Aberth-Ehrlich update of all root estimates.

    Returns the updated roots and the largest relative step taken.
    """
    n = len(roots)
    new_roots = list(roots)
    max_step = gmpy2.mpfr(0)
    for i in range(n):
        zi = roots[i]
        p, dp = horner2(coeffs, zi)
        if p == 0:
            continue
        if dp == 0:
            new_roots[i] = zi * gmpy2.mpc("1.000000001", "1e-9")
            max_step = max(max_step, gmpy2.mpfr(1))
            continue
        newton = p / dp
        s = gmpy2.mpc(0)
        for j in range(n):
            if j != i:
                s += 1 / (zi - roots[j])
        denom = 1 - newton * s
        step = newton if denom == 0 else newton / denom
        new_roots[i] = zi - step
        rel = abs(step) / max(abs(zi), gmpy2.mpfr(1))
        max_step = max(max_step, rel)
    return new_roots, max_step
