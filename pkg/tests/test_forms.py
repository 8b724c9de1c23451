"""Forms, causal classes and null frames.

Core claims:
    - the (3,2) and (2,1) pairings match their defining coordinate formulas
    - causal classification is exact in rational mode, tolerance-based in float
    - null frames satisfy nullity, orthogonality, future-pointing, det > 0
    - frames are scale-invariant, swap under director negation, and agree
      with a brute-force circle-intersection oracle
"""

from fractions import Fraction

import numpy as np
import pytest

from einkernel.exact import exact_sqrt
from einkernel.exceptions import ExactArithmeticError, NotSpacelike
from einkernel.forms import (CausalClass, causal_class, form21, form32,
                             null_frame, orientation_det, vec3, vec5)

from conftest import random_spacelike

E = np.eye(5)


def test_form32_basis_values():
    assert form32(E[0], E[0]) == 1.0
    assert form32(E[3], E[3]) == -1.0
    assert form32(E[0], E[1]) == 0.0
    assert form32(E[4], E[4]) == -1.0


def test_form21_values():
    assert form21([1.0, 0, 0], [1.0, 0, 0]) == 1.0
    assert form21([0.0, 1, 1], [0.0, 1, 1]) == 0.0
    assert form21([0.0, 0, 1], [0.0, 0, 1]) == -1.0


def test_forms_symmetric_bilinear(rng):
    for _ in range(200):
        x, y, z = rng.normal(size=(3, 5))
        a, b = rng.normal(size=2)
        assert abs(form32(x, y) - form32(y, x)) < 1e-12
        assert abs(form32(a * x + b * y, z)
                   - (a * form32(x, z) + b * form32(y, z))) < 1e-12
        u, v, w = rng.normal(size=(3, 3))
        assert abs(form21(u, v) - form21(v, u)) < 1e-12
        assert abs(form21(a * u + b * v, w)
                   - (a * form21(u, w) + b * form21(v, w))) < 1e-12


def test_forms_exact_mode():
    x = vec5("1/3", "2/7", 0, "5/11", 1, exact=True)
    y = vec5(2, "1/5", "3/4", 1, "1/9", exact=True)
    direct = (x[0] * y[0] + x[1] * y[1] + x[2] * y[2] - x[3] * y[3]
              - x[4] * y[4])
    assert form32(x, y) == direct
    assert isinstance(form32(x, y), Fraction)


def test_causal_class():
    assert causal_class(np.array([1.0, 0, 0, 0, 1])) is CausalClass.LIGHTLIKE
    assert causal_class(np.zeros(3)) is CausalClass.ZERO
    # 9 - 1 = 8 > 0 by direct evaluation
    assert causal_class(np.array([0.0, 3, 1])) is CausalClass.SPACELIKE
    assert causal_class(np.array([0.0, 0, 2])) is CausalClass.TIMELIKE
    assert causal_class(vec3(0, 1, 1, exact=True)) is CausalClass.LIGHTLIKE


def test_orientation_det():
    assert orientation_det([1, 0, 0], [0, 1, 0], [0, 0, 1]) == 1
    assert orientation_det([1.0, 0, 0], [0.0, 1, 1], [0.0, -1, 1]) == 2.0
    assert orientation_det([1.0, 2, 3], [1.0, 2, 3], [0.0, 1, 0]) == 0.0


def _null_frame_bruteforce(u, n=200000):
    """Independent oracle: scan the time-1 null circle for u-perp directions."""
    u = np.asarray(u, dtype=float)
    angles = np.linspace(0, 2 * np.pi, n, endpoint=False)
    circle = np.column_stack([np.cos(angles), np.sin(angles),
                              np.ones_like(angles)])
    vals = circle @ np.array([u[0], u[1], -u[2]])
    hits = []
    for i in range(n):
        j = (i + 1) % n
        if vals[i] == 0.0:
            hits.append(circle[i])
        elif vals[i] * vals[j] < 0:
            t = vals[i] / (vals[i] - vals[j])
            a = angles[i] + t * (2 * np.pi / n)
            hits.append(np.array([np.cos(a), np.sin(a), 1.0]))
    assert len(hits) == 2
    a, b = hits
    if orientation_det(u, a, b) > 0:
        return a, b
    return b, a


def test_null_frame_reference_values():
    nf = null_frame(np.array([1.0, 0, 0]))
    assert np.allclose(nf.x_minus, [0, 1, 1])
    assert np.allclose(nf.x_plus, [0, -1, 1])
    nf2 = null_frame(np.array([0.0, 1, 0]))
    assert np.allclose(nf2.x_minus, [-1, 0, 1])
    assert np.allclose(nf2.x_plus, [1, 0, 1])


def test_null_frame_against_bruteforce(rng):
    for _ in range(25):
        u = random_spacelike(rng)
        nf = null_frame(u)
        bm, bp = _null_frame_bruteforce(u)
        assert np.allclose(nf.x_minus, bm, atol=1e-4)
        assert np.allclose(nf.x_plus, bp, atol=1e-4)


def test_null_frame_invariants(rng):
    for _ in range(300):
        u = random_spacelike(rng, scale=rng.uniform(0.5, 3.0))
        nf = null_frame(u)
        for x in (nf.x_minus, nf.x_plus):
            assert abs(form21(x, x)) < 1e-12
            assert abs(form21(u, x)) < 1e-12 * (1 + np.abs(u).max())
            assert x[2] > 0
        assert orientation_det(u, nf.x_minus, nf.x_plus) > 0


def test_null_frame_scaling(rng):
    for _ in range(100):
        u = random_spacelike(rng)
        c = rng.uniform(0.1, 10.0)
        a, b = null_frame(u), null_frame(c * u)
        assert np.allclose(a.x_minus, b.x_minus, rtol=1e-12, atol=1e-14)
        assert np.allclose(a.x_plus, b.x_plus, rtol=1e-12, atol=1e-14)


def test_null_frame_exact_scaling_is_equality():
    u = vec3(1, 0, 0, exact=True)
    c = Fraction(7, 3)
    a, b = null_frame(u), null_frame(c * u)
    assert all(x == y for x, y in zip(a.x_minus, b.x_minus))
    assert all(x == y for x, y in zip(a.x_plus, b.x_plus))


def test_null_frame_negation_swaps(rng):
    for _ in range(100):
        u = random_spacelike(rng)
        a, b = null_frame(u), null_frame(-u)
        assert np.allclose(a.x_minus, b.x_plus)
        assert np.allclose(a.x_plus, b.x_minus)


def test_null_frame_rejects_non_spacelike():
    with pytest.raises(NotSpacelike):
        null_frame(np.array([0.0, 0, 1]))
    with pytest.raises(NotSpacelike):
        null_frame(np.array([0.0, 1, 1]))
    with pytest.raises(NotSpacelike):
        null_frame(np.zeros(3))


def test_null_frame_exact_mode():
    nf = null_frame(vec3(1, 0, 0, exact=True))
    assert list(nf.x_minus) == [0, 1, 1]
    assert list(nf.x_plus) == [0, -1, 1]
    # <u,u> = 2 is not a rational square: the exact path must refuse
    with pytest.raises(ExactArithmeticError):
        null_frame(vec3(1, 1, 0, exact=True))


def test_exact_sqrt():
    assert exact_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    with pytest.raises(ExactArithmeticError):
        exact_sqrt(Fraction(2))
    with pytest.raises(ExactArithmeticError):
        exact_sqrt(Fraction(-1))
