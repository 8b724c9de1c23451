"""Fixed-basis bilinear forms, causal classification and null frames.

Two inner-product spaces appear throughout the kernel:

* ``R^{3,2}``: R^5 with the form ``x1*y1 + x2*y2 + x3*y3 - x4*y4 - x5*y5``.
* ``R^{2,1}``: R^3 with the Lorentzian form ``v1*w1 + v2*w2 - v3*w3``; the
  third coordinate is time, and "future-pointing" means a strictly positive
  time coordinate.

Both signatures are hard-wired; there is deliberately no general (p,q)
machinery here.  Vectors are numpy arrays, either float64 or object arrays of
``fractions.Fraction`` for the exact certification paths.  All operations are
pure and all returned values are fresh arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from . import tolerances
from .exact import exact_sqrt, frac, is_exact
from .exceptions import NotSpacelike

#: Gram matrix of the (3,2) form in the fixed basis.
J32 = np.diag([1.0, 1.0, 1.0, -1.0, -1.0])

#: Gram matrix of the (2,1) form in the fixed basis.
J21 = np.diag([1.0, 1.0, -1.0])


def vec3(a, b, c, exact=False) -> np.ndarray:
    if exact:
        return np.array([frac(a), frac(b), frac(c)], dtype=object)
    return np.array([a, b, c], dtype=float)


def vec5(a, b, c, d, e, exact=False) -> np.ndarray:
    if exact:
        return np.array([frac(x) for x in (a, b, c, d, e)], dtype=object)
    return np.array([a, b, c, d, e], dtype=float)


def form32(x, y):
    """Signature (3,2) pairing; broadcasts over leading axes."""
    x = np.asarray(x)
    y = np.asarray(y)
    return (x[..., 0] * y[..., 0] + x[..., 1] * y[..., 1] + x[..., 2] * y[..., 2]
            - x[..., 3] * y[..., 3] - x[..., 4] * y[..., 4])


def form21(v, w):
    """Signature (2,1) pairing; broadcasts over leading axes."""
    v = np.asarray(v)
    w = np.asarray(w)
    return v[..., 0] * w[..., 0] + v[..., 1] * w[..., 1] - v[..., 2] * w[..., 2]


def self_form(v):
    """<v,v> under the form matching the vector's length (3 or 5)."""
    v = np.asarray(v)
    if v.shape[-1] == 3:
        return form21(v, v)
    if v.shape[-1] == 5:
        return form32(v, v)
    raise ValueError(f"expected a 3- or 5-vector, got shape {v.shape}")


def euclid_norm_sq(v):
    v = np.asarray(v)
    return (v * v).sum(axis=-1)


class CausalClass(Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    ZERO = "zero"


def causal_class(v, tol=None) -> CausalClass:
    """Classify a single 3- or 5-vector by the sign of its self-pairing.

    Floating inputs use ``tol`` (default ``tolerances.EPS_CAUSAL``) scaled by
    the squared Euclidean magnitude; exact inputs use exact signs.
    """
    v = np.asarray(v)
    q = self_form(v)
    if is_exact(v):
        if all(c == 0 for c in v):
            return CausalClass.ZERO
        if q == 0:
            return CausalClass.LIGHTLIKE
        return CausalClass.SPACELIKE if q > 0 else CausalClass.TIMELIKE
    if not np.all(np.isfinite(v)):
        raise ValueError("non-finite coordinates")
    mag = euclid_norm_sq(v)
    if mag == 0.0:
        return CausalClass.ZERO
    eps = (tolerances.EPS_CAUSAL if tol is None else tol) * max(1.0, mag)
    if abs(q) <= eps:
        return CausalClass.LIGHTLIKE
    return CausalClass.SPACELIKE if q > eps else CausalClass.TIMELIKE


def is_future_null(x, tol=None) -> bool:
    """Future-pointing lightlike test for a 3-vector."""
    x = np.asarray(x)
    return causal_class(x, tol) is CausalClass.LIGHTLIKE and x[2] > 0


def orientation_det(a, b, c):
    """Determinant of the 3x3 row matrix [a; b; c]."""
    a = np.asarray(a)
    b = np.asarray(b)
    c = np.asarray(c)
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


@dataclass(frozen=True)
class NullFrame:
    """Future null pair spanning ``u``-perp, with [u, x_minus, x_plus] positive.

    Both null legs are normalized to time coordinate 1, which fixes the choice
    inside each future null ray and makes the frame scale-invariant in ``u``.
    """

    u: np.ndarray
    x_minus: np.ndarray
    x_plus: np.ndarray


def null_frame(u, tol=None) -> NullFrame:
    """Null frame of a spacelike 3-vector.

    With ``N = u1^2 + u2^2`` and ``Q = <u,u> > 0`` the two future null
    directions orthogonal to ``u`` are, after scaling time to 1::

        x_minus = ((u3*u1 - r*u2)/N, (u3*u2 + r*u1)/N, 1),   r = sqrt(Q)
        x_plus  = ((u3*u1 + r*u2)/N, (u3*u2 - r*u1)/N, 1)

    The labels are pinned by requiring det[u, x_minus, x_plus] > 0 (that
    determinant equals ``2*Q^{3/2}/N``).  Exact inputs need ``Q`` to be a
    rational square, otherwise ``ExactArithmeticError`` is raised.
    """
    u = np.asarray(u)
    if causal_class(u, tol) is not CausalClass.SPACELIKE:
        raise NotSpacelike(f"director {u!r} is not spacelike")
    exact = is_exact(u)
    u1, u2, u3 = u[0], u[1], u[2]
    n = u1 * u1 + u2 * u2
    q = form21(u, u)
    r = exact_sqrt(q) if exact else math.sqrt(float(q))
    one = Fraction(1) if exact else 1.0
    x_minus = np.array([(u3 * u1 - r * u2) / n, (u3 * u2 + r * u1) / n, one],
                       dtype=object if exact else float)
    x_plus = np.array([(u3 * u1 + r * u2) / n, (u3 * u2 - r * u1) / n, one],
                      dtype=object if exact else float)
    return NullFrame(u=np.array(u, copy=True), x_minus=x_minus, x_plus=x_plus)
