"""Small exact linear algebra over the rationals.

Vectors and matrices live in numpy object arrays holding ``fractions.Fraction``
entries.  Everything here is loop-based and meant for the certification paths,
where a handful of 5x5 systems is all we ever solve; the floating kernel never
calls into this module.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .exceptions import ExactArithmeticError

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints, strings like ``"107/12"`` and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise ExactArithmeticError(f"cannot interpret {x!r} as an exact rational")


def fvec(*entries) -> np.ndarray:
    """Object-dtype vector of Fractions."""
    return np.array([frac(e) for e in entries], dtype=object)


def fmat(rows) -> np.ndarray:
    """Object-dtype matrix of Fractions from an iterable of rows."""
    return np.array([[frac(e) for e in row] for row in rows], dtype=object)


def is_exact(a) -> bool:
    return np.asarray(a).dtype == object


def to_float(a) -> np.ndarray:
    return np.asarray(a, dtype=float)


def exact_sqrt(q: Fraction) -> Fraction:
    """Exact square root of a nonnegative rational, or raise.

    Raised for non-square inputs: the caller is on a certification path and
    must not silently fall back to floating point.
    """
    q = frac(q)
    if q < 0:
        raise ExactArithmeticError(f"negative radicand {q}")
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise ExactArithmeticError(f"{q} has no rational square root")
    return Fraction(rn, rd)


def rref(m: np.ndarray):
    """Reduced row echelon form; returns (rref matrix, pivot column list)."""
    a = np.array([[frac(e) for e in row] for row in m], dtype=object)
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if a[i, c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            a[[r, pivot]] = a[[pivot, r]]
        a[r] = a[r] / a[r, c]
        for i in range(nrows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def nullspace(m: np.ndarray):
    """Basis (list of object vectors) of the right nullspace of m."""
    a, pivots = rref(m)
    ncols = a.shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = np.array([ZERO] * ncols, dtype=object)
        v[f] = ONE
        for r, c in enumerate(pivots):
            v[c] = -a[r, f]
        basis.append(v)
    return basis


def solve(m: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Unique solution of m x = b; raises if singular or inconsistent."""
    m = np.asarray(m, dtype=object)
    b = np.asarray(b, dtype=object)
    n = m.shape[1]
    aug = np.concatenate([m, b.reshape(-1, 1)], axis=1)
    a, pivots = rref(aug)
    if n in pivots:
        raise ExactArithmeticError("inconsistent linear system")
    if len(pivots) != n:
        raise ExactArithmeticError("singular linear system")
    x = np.array([ZERO] * n, dtype=object)
    for r, c in enumerate(pivots):
        x[c] = a[r, n]
    return x


def inverse(m: np.ndarray) -> np.ndarray:
    """Exact inverse of a square rational matrix."""
    m = np.asarray(m, dtype=object)
    n = m.shape[0]
    eye = np.array([[ONE if i == j else ZERO for j in range(n)] for i in range(n)],
                   dtype=object)
    aug = np.concatenate([m, eye], axis=1)
    a, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ExactArithmeticError("matrix is singular")
    return a[:, n:]


def det(m: np.ndarray) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    a = np.array([[frac(e) for e in row] for row in m], dtype=object)
    n = a.shape[0]
    sign = ONE
    result = ONE
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if a[i, c] != 0:
                pivot = i
                break
        if pivot is None:
            return ZERO
        if pivot != c:
            a[[c, pivot]] = a[[pivot, c]]
            sign = -sign
        result *= a[c, c]
        for i in range(c + 1, n):
            a[i] = a[i] - (a[i, c] / a[c, c]) * a[c]
    return sign * result
