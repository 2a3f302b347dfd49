# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel lane: MPFR-level loops over gmpy2 mpc coefficients.

Complex multiply-accumulate is expanded into mpfr operations on the real
and imaginary parts, skipping MPC's correct-rounding machinery; results
agree with the pure lane to within a few ulps of the working precision.
"""

import gmpy2

from gmpy2 cimport import_gmpy2, mpc, GMPy_MPC_New
from gmpy2.gmpy2 cimport mpfr_t, mpfr_ptr, mpfr_srcptr

cdef extern from "mpfr.h":
    int mpfr_add(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, int) nogil
    int mpfr_sub(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, int) nogil
    int mpfr_mul(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, int) nogil
    int mpfr_fma(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_srcptr, int) nogil
    int mpfr_set(mpfr_ptr, mpfr_srcptr, int) nogil
    int mpfr_set_si(mpfr_ptr, long, int) nogil
    int mpfr_neg(mpfr_ptr, mpfr_srcptr, int) nogil
    void mpfr_init2(mpfr_ptr, long) nogil
    void mpfr_clear(mpfr_ptr) nogil
    void mpfr_swap(mpfr_ptr, mpfr_ptr) nogil

import_gmpy2()

BACKEND = "compiled"


cdef inline long _prec():
    return <long>gmpy2.get_context().precision


cdef inline void _acc_mul(mpfr_ptr acc_re, mpfr_ptr acc_im, mpfr_ptr t,
                          mpc a, mpc b) nogil:
    # (acc_re, acc_im) += a * b
    mpfr_fma(acc_re, a.c[0].re, b.c[0].re, acc_re, 0)
    mpfr_mul(t, a.c[0].im, b.c[0].im, 0)
    mpfr_sub(acc_re, acc_re, t, 0)
    mpfr_fma(acc_im, a.c[0].re, b.c[0].im, acc_im, 0)
    mpfr_fma(acc_im, a.c[0].im, b.c[0].re, acc_im, 0)


def cauchy_coeff(list a, list b, Py_ssize_t n):
    """Order-``n`` coefficient of the product of series ``a`` and ``b``."""
    cdef long prec = _prec()
    cdef mpc acc = GMPy_MPC_New(prec, prec, NULL)
    cdef mpfr_t t
    cdef Py_ssize_t m, lo, hi
    lo = n - len(b) + 1
    if lo < 0:
        lo = 0
    hi = len(a) - 1
    if hi > n:
        hi = n
    mpfr_set_si(acc.c[0].re, 0, 0)
    mpfr_set_si(acc.c[0].im, 0, 0)
    mpfr_init2(t, prec)
    try:
        for m in range(lo, hi + 1):
            _acc_mul(acc.c[0].re, acc.c[0].im, t, <mpc>a[m], <mpc>b[n - m])
    finally:
        mpfr_clear(t)
    return acc


def series_mul(list a, list b, Py_ssize_t order):
    """Truncated Cauchy product of ``a`` and ``b`` through ``order``."""
    cdef Py_ssize_t n
    return [cauchy_coeff(a, b, n) for n in range(order + 1)]


def reciprocal_next(list c, list d, Py_ssize_t n):
    """Order-``n`` coefficient of ``1/c(z)`` given ``d[0:n]`` already known."""
    cdef long prec = _prec()
    cdef mpc acc
    cdef mpfr_t t
    cdef Py_ssize_t m
    if n == 0:
        return 1 / <mpc>c[0]
    acc = GMPy_MPC_New(prec, prec, NULL)
    mpfr_set_si(acc.c[0].re, 0, 0)
    mpfr_set_si(acc.c[0].im, 0, 0)
    mpfr_init2(t, prec)
    try:
        for m in range(n):
            _acc_mul(acc.c[0].re, acc.c[0].im, t, <mpc>c[n - m], <mpc>d[m])
    finally:
        mpfr_clear(t)
    return -acc / <mpc>c[0]


def horner(list coeffs, z):
    """Evaluate ``sum(coeffs[i] * z**i)``."""
    cdef long prec = _prec()
    cdef mpc zz = <mpc>gmpy2.mpc(z)
    cdef mpc p = GMPy_MPC_New(prec, prec, NULL)
    cdef mpfr_t pr, pi, t
    cdef Py_ssize_t k
    cdef mpc ck
    mpfr_set_si(p.c[0].re, 0, 0)
    mpfr_set_si(p.c[0].im, 0, 0)
    mpfr_init2(pr, prec)
    mpfr_init2(pi, prec)
    mpfr_init2(t, prec)
    try:
        for k in range(len(coeffs) - 1, -1, -1):
            ck = <mpc>coeffs[k]
            # p = p*z + ck
            mpfr_set(pr, ck.c[0].re, 0)
            mpfr_set(pi, ck.c[0].im, 0)
            _acc_mul(pr, pi, t, p, zz)
            mpfr_swap(p.c[0].re, pr)
            mpfr_swap(p.c[0].im, pi)
    finally:
        mpfr_clear(pr)
        mpfr_clear(pi)
        mpfr_clear(t)
    return p


def horner2(list coeffs, z):
    """Evaluate a polynomial and its derivative at ``z``."""
    cdef long prec = _prec()
    cdef mpc zz = <mpc>gmpy2.mpc(z)
    cdef mpc p = GMPy_MPC_New(prec, prec, NULL)
    cdef mpc dp = GMPy_MPC_New(prec, prec, NULL)
    cdef mpfr_t ar, ai, t
    cdef Py_ssize_t k
    cdef mpc ck
    mpfr_set_si(p.c[0].re, 0, 0)
    mpfr_set_si(p.c[0].im, 0, 0)
    mpfr_set_si(dp.c[0].re, 0, 0)
    mpfr_set_si(dp.c[0].im, 0, 0)
    mpfr_init2(ar, prec)
    mpfr_init2(ai, prec)
    mpfr_init2(t, prec)
    try:
        for k in range(len(coeffs) - 1, -1, -1):
            ck = <mpc>coeffs[k]
            # dp = dp*z + p
            mpfr_set(ar, p.c[0].re, 0)
            mpfr_set(ai, p.c[0].im, 0)
            _acc_mul(ar, ai, t, dp, zz)
            mpfr_swap(dp.c[0].re, ar)
            mpfr_swap(dp.c[0].im, ai)
            # p = p*z + ck
            mpfr_set(ar, ck.c[0].re, 0)
            mpfr_set(ai, ck.c[0].im, 0)
            _acc_mul(ar, ai, t, p, zz)
            mpfr_swap(p.c[0].re, ar)
            mpfr_swap(p.c[0].im, ai)
    finally:
        mpfr_clear(ar)
        mpfr_clear(ai)
        mpfr_clear(t)
    return p, dp


def aberth_sweep(list coeffs, list roots):
    """One simultaneous Aberth-Ehrlich update of all root estimates."""
    cdef Py_ssize_t n = len(roots)
    cdef Py_ssize_t i, j
    cdef list new_roots = list(roots)
    max_step = gmpy2.mpfr(0)
    one = gmpy2.mpfr(1)
    for i in range(n):
        zi = roots[i]
        p, dp = horner2(coeffs, zi)
        if p == 0:
            continue
        if dp == 0:
            new_roots[i] = zi * gmpy2.mpc("1.000000001", "1e-9")
            if max_step < one:
                max_step = one
            continue
        newton = p / dp
        s = gmpy2.mpc(0)
        for j in range(n):
            if j != i:
                s += 1 / (zi - roots[j])
        denom = 1 - newton * s
        step = newton if denom == 0 else newton / denom
        new_roots[i] = zi - step
        rel = abs(step) / max(abs(zi), one)
        if max_step < rel:
            max_step = rel
    return new_roots, max_step
