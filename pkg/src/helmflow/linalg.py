"""Dense complex LU factorization at gmpy2 working precision.

Desk-scale sizes only (stage systems, Pade denominators, Sylvester
determinants).  Partial pivoting by default; a complete-pivoting pass is
retried when a pivot collapses, and a :class:`SingularMatrixError`
carrying pivot diagnostics is raised if that fails too.
"""

from __future__ import annotations

import gmpy2


class SingularMatrixError(ArithmeticError):
    def __init__(self, message, pivot_ratio=None):
        super().__init__(message)
        self.pivot_ratio = pivot_ratio


def _pivot_floor(scale):
    prec = gmpy2.get_context().precision
    return scale * gmpy2.mpfr(2) ** (-(prec - 24))


class LUFactor:
    """LU factors of a square mpc matrix, reusable across right-hand sides."""

    def __init__(self, matrix, complete_pivoting: bool = False):
        n = len(matrix)
        a = [[gmpy2.mpc(x) for x in row] for row in matrix]
        row_perm = list(range(n))
        col_perm = list(range(n))
        scale = max((abs(x) for row in a for x in row), default=gmpy2.mpfr(0))
        if scale == 0:
            raise SingularMatrixError("zero matrix")
        floor = _pivot_floor(scale)
        min_piv = None
        max_piv = gmpy2.mpfr(0)
        for k in range(n):
            if complete_pivoting:
                pr, pc = k, k
                best = abs(a[k][k])
                for i in range(k, n):
                    for j in range(k, n):
                        m = abs(a[i][j])
                        if m > best:
                            best, pr, pc = m, i, j
                if pc != k:
                    for row in a:
                        row[k], row[pc] = row[pc], row[k]
                    col_perm[k], col_perm[pc] = col_perm[pc], col_perm[k]
            else:
                pr = max(range(k, n), key=lambda i: abs(a[i][k]))
                best = abs(a[pr][k])
            if best <= floor:
                ratio = float(best / scale) if scale else 0.0
                raise SingularMatrixError(
                    f"pivot {k} collapsed (|pivot|/scale = {ratio:.3e})",
                    pivot_ratio=ratio,
                )
            if pr != k:
                a[k], a[pr] = a[pr], a[k]
                row_perm[k], row_perm[pr] = row_perm[pr], row_perm[k]
            piv = a[k][k]
            apiv = abs(piv)
            min_piv = apiv if min_piv is None else min(min_piv, apiv)
            max_piv = max(max_piv, apiv)
            for i in range(k + 1, n):
                if a[i][k] == 0:
                    continue
                factor = a[i][k] / piv
                a[i][k] = factor
                row_i = a[i]
                row_k = a[k]
                for j in range(k + 1, n):
                    row_i[j] = row_i[j] - factor * row_k[j]
        self.n = n
        self.lu = a
        self.row_perm = row_perm
        self.col_perm = col_perm
        self.pivot_ratio = float(min_piv / max_piv) if n else 1.0

    def solve(self, rhs):
        """Solve A x = rhs for one right-hand side (list of mpc)."""
        n = self.n
        x = [gmpy2.mpc(rhs[p]) for p in self.row_perm]
        for i in range(1, n):
            row = self.lu[i]
            acc = x[i]
            for j in range(i):
                acc = acc - row[j] * x[j]
            x[i] = acc
        for i in range(n - 1, -1, -1):
            row = self.lu[i]
            acc = x[i]
            for j in range(i + 1, n):
                acc = acc - row[j] * x[j]
            x[i] = acc / row[i]
        out = [None] * n
        for k, col in enumerate(self.col_perm):
            out[col] = x[k]
        return out

    def determinant(self):
        det = gmpy2.mpc(1)
        for k in range(self.n):
            det *= self.lu[k][k]
        sign = _perm_sign(self.row_perm) * _perm_sign(self.col_perm)
        return det if sign > 0 else -det


def _perm_sign(perm):
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def factorize(matrix) -> LUFactor:
    """LU-factorize with partial pivoting, falling back to complete."""
    try:
        return LUFactor(matrix, complete_pivoting=False)
    except SingularMatrixError:
        return LUFactor(matrix, complete_pivoting=True)


def solve(matrix, rhs):
    return factorize(matrix).solve(rhs)


def determinant(matrix):
    try:
        return factorize(matrix).determinant()
    except SingularMatrixError:
        return gmpy2.mpc(0)
