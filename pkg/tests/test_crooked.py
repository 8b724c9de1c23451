"""Crooked planes, halfspaces, quadrants, consistent orientation, allowability.

Core claims:
    - stem/wing/plane membership matches the reference examples
    - the plane is the same point set for directors u and -u
    - {H(p,u), H(p,-u), CP(p,u)} partition space (trichotomy)
    - the closed-form halfspace test agrees with the region-growing oracle
    - the consistent-orientation criterion agrees with closure sampling
    - allowable pairs: facet test agrees with the LP cross-check, and the
      strong disjointness statement holds on sampled planes
"""

import numpy as np
import pytest

from einkernel.crooked import (AllowablePair, CrookedHalfspace, CrookedPlane,
                               Extension, StemQuadrant,
                               affine_disjointness_certificate, allowable_pair,
                               classify_halfspace_by_components,
                               cone_interior, cone_interior_lp,
                               consistently_oriented,
                               difference_cone_generators,
                               distance_to_crooked_plane, halfspace_mask,
                               in_crooked_plane, in_halfspace, in_quadrant_cone,
                               in_stem, in_stem_quadrant, in_wing,
                               project_to_crooked_plane, sample_crooked_plane,
                               ultraparallel, wing_seeds)
from einkernel.exceptions import (BadWingData, NotAllowable,
                                  NotConsistentlyOriented, NotSpacelike)
from einkernel.forms import form21, null_frame
from einkernel.group import random_so21

from conftest import random_spacelike

O = np.zeros(3)
U1 = np.array([1.0, 0, 0])


def test_in_stem():
    assert in_stem(np.array([0.2, -0.3, 0.8]), np.array([0.2, -0.3, 0.8]), U1)
    assert in_stem(np.array([0.0, 0, 1]), O, U1)
    assert not in_stem(np.array([0.0, 3, 1]), O, U1)
    with pytest.raises(NotSpacelike):
        in_stem(O, O, np.array([0.0, 0, 1.0]))


def test_in_wing():
    xp = np.array([0.0, -1, 1])  # x_plus of (1,0,0)
    assert in_wing(U1, O, xp, U1)
    assert not in_wing(-U1, O, xp, U1)
    assert in_wing(xp, O, xp, U1)  # the ray R x is in the closure
    with pytest.raises(BadWingData):
        in_wing(U1, O, np.array([0.0, 1, 2]), U1)  # not null
    with pytest.raises(BadWingData):
        in_wing(U1, O, xp, np.array([0.0, 1, 1]))  # seed not spacelike
    with pytest.raises(BadWingData):
        in_wing(U1, O, xp, np.array([0.0, 1, 0]))  # seed not orthogonal


def test_in_crooked_plane():
    cp = CrookedPlane(O, U1)
    assert in_crooked_plane(O, cp)
    assert in_crooked_plane(np.array([5.0, -2, 2]), cp)
    assert not in_crooked_plane(np.array([0.0, 3, 1]), cp)


def test_plane_set_equal_under_director_negation(rng):
    for _ in range(20):
        u = random_spacelike(rng)
        p = rng.normal(size=3)
        cp_pos = CrookedPlane(p, u)
        cp_neg = CrookedPlane(p, -u)
        # canonical director makes them equal records
        assert np.allclose(cp_pos.director, cp_neg.director)
        for _ in range(50):
            q = rng.normal(size=3) * 2
            frame = null_frame(u)
            sp, sm = wing_seeds(u, Extension.POSITIVE)
            direct_pos = (in_stem(q, p, u) or in_wing(q, p, frame.x_plus, sp)
                          or in_wing(q, p, frame.x_minus, sm))
            frame_n = null_frame(-u)
            sp_n, sm_n = wing_seeds(-u, Extension.POSITIVE)
            direct_neg = (in_stem(q, p, -u)
                          or in_wing(q, p, frame_n.x_plus, sp_n)
                          or in_wing(q, p, frame_n.x_minus, sm_n))
            assert direct_pos == direct_neg


def test_in_halfspace_reference_points():
    hs = CrookedHalfspace(O, U1)
    assert in_halfspace(np.array([0.0, 3, 1]), hs)
    assert not in_halfspace(np.array([0.0, -3, 1]), hs)
    assert not in_halfspace(np.array([0.0, 0, 1]), hs)  # stem point, open region


def test_trichotomy(rng):
    for _ in range(20):
        u = random_spacelike(rng)
        p = rng.normal(size=3) * 0.5
        hs = CrookedHalfspace(p, u)
        cp = CrookedPlane(p, u)
        pts = rng.normal(size=(500, 3)) * 2.0
        a = halfspace_mask(pts, hs)
        b = halfspace_mask(pts, hs.opposite)
        c = np.array([in_crooked_plane(q, cp) for q in pts])
        assert np.all(a.astype(int) + b.astype(int) + c.astype(int) == 1)


def test_quadrant_interior_lies_in_halfspace(rng):
    for _ in range(20):
        u = random_spacelike(rng)
        p = rng.normal(size=3) * 0.5
        hs = CrookedHalfspace(p, u)
        frame = null_frame(u)
        a, b = rng.uniform(0.05, 2.0, size=2)
        q = p + a * np.asarray(frame.x_minus) - b * np.asarray(frame.x_plus)
        assert in_halfspace(q, hs)


def test_halfspace_scale_invariance_and_equivariance(rng):
    for _ in range(20):
        u = random_spacelike(rng)
        p = rng.normal(size=3) * 0.5
        q = rng.normal(size=3) * 2.0
        hs1 = CrookedHalfspace(p, u)
        hs2 = CrookedHalfspace(p, rng.uniform(0.1, 5.0) * u)
        assert in_halfspace(q, hs1) == in_halfspace(q, hs2)
        g = random_so21(rng)
        hs_g = CrookedHalfspace(g @ p, g @ u)
        assert in_halfspace(q, hs1) == in_halfspace(g @ q, hs_g)


def test_halfspace_oracle_equivalence(rng):
    for _ in range(4):
        u = random_spacelike(rng)
        hs = CrookedHalfspace(rng.normal(size=3) * 0.3, u)
        pts, labels, blocked = classify_halfspace_by_components(hs, n=21)
        pred = halfspace_mask(pts, hs)
        classified = labels != 0
        assert classified.sum() > 0.9 * (~blocked).sum()
        assert np.array_equal(pred[classified], labels[classified] == 1)


def test_in_stem_quadrant():
    sq = StemQuadrant(O, U1)
    assert in_stem_quadrant(O, sq)
    assert in_stem_quadrant(np.array([0.0, 3, 1]), sq)  # a=2, b=1
    assert not in_stem_quadrant(U1, sq)


def test_ultraparallel():
    assert ultraparallel(U1, np.array([-2.0, 0, 1]))
    assert not ultraparallel(U1, -U1)  # same perpendicular plane
    assert not ultraparallel(U1, U1)
    # crossing geodesics: (1,0,0) vs (0,1,0) perps meet in a timelike line
    assert not ultraparallel(U1, np.array([0.0, 1, 0]))


def test_consistently_oriented_reference():
    assert not consistently_oriented(U1, -U1)
    assert not consistently_oriented(U1, U1)
    assert consistently_oriented(U1, np.array([-2.0, 0, 1]))


def _fibonacci_sphere(n):
    i = np.arange(n) + 0.5
    phi = np.arccos(1 - 2 * i / n)
    theta = np.pi * (1 + 5 ** 0.5) * i
    return np.column_stack([np.cos(theta) * np.sin(phi),
                            np.sin(theta) * np.sin(phi), np.cos(phi)])


def test_consistently_oriented_matches_closure_oracle(rng):
    """Definitional oracle: closed halfspaces are cones from the vertex, so
    they meet only at the vertex iff no unit direction lies in both closures.
    """
    dirs = _fibonacci_sphere(20000)

    def closure_mask(u):
        m = halfspace_mask(dirs, CrookedHalfspace(O, u))
        d = distance_to_crooked_plane(dirs, CrookedPlane(O, u))
        return m | (d < 1e-9)

    checked = 0
    while checked < 40:
        u1 = random_spacelike(rng)
        u2 = random_spacelike(rng)
        frames = [form21(u1, null_frame(u2).x_minus),
                  form21(u1, null_frame(u2).x_plus),
                  form21(u2, null_frame(u1).x_minus),
                  form21(u2, null_frame(u1).x_plus), form21(u1, u2)]
        if min(abs(v) for v in frames) < 0.02:
            continue  # near-degenerate; both sides ill-conditioned
        checked += 1
        oracle = not np.any(closure_mask(u1) & closure_mask(u2))
        assert consistently_oriented(u1, u2) == oracle


def random_co_pair(rng):
    while True:
        u1 = random_spacelike(rng)
        u2 = random_spacelike(rng)
        if consistently_oriented(u1, u2):
            return u1, u2


def random_allowable(rng, u1, u2):
    f1, f2 = null_frame(u1), null_frame(u2)
    while True:
        a1, b1, a2, b2 = rng.uniform(0.05, 1.5, size=4)
        z1 = a1 * np.asarray(f1.x_minus) - b1 * np.asarray(f1.x_plus)
        z2 = a2 * np.asarray(f2.x_minus) - b2 * np.asarray(f2.x_plus)
        if allowable_pair(z1, z2, u1, u2):
            return z1, z2


def test_allowable_pair_reference():
    u1 = U1
    u2 = np.array([-2.0, 0, 1])
    f1, f2 = null_frame(u1), null_frame(u2)
    z1 = np.asarray(f1.x_minus) - np.asarray(f1.x_plus)
    assert np.allclose(z1, [0, 2, 0])
    z2 = np.asarray(f2.x_minus) - np.asarray(f2.x_plus)
    assert allowable_pair(z1, z2, u1, u2)
    # the scaled variant (0, -2*sqrt(3), 0) is allowable as well
    assert allowable_pair(z1, np.array([0.0, -2 * np.sqrt(3), 0]), u1, u2)
    assert not allowable_pair(O, O, u1, u2)
    assert not allowable_pair(u1, z2, u1, u2)  # z1 outside the quadrant cone
    with pytest.raises(NotConsistentlyOriented):
        allowable_pair(z1, z2, u1, u1)


def test_cone_interior_matches_lp(rng):
    for _ in range(30):
        u1, u2 = random_co_pair(rng)
        gens = difference_cone_generators(u1, u2)
        w = rng.normal(size=3)
        facet = cone_interior(w, gens)
        lp = cone_interior_lp(w, gens)
        if facet != lp:
            # disagreement allowed only within the boundary band
            from einkernel.crooked import cone_facet_normals
            normals = cone_facet_normals(gens)
            assert normals is not None
            assert np.abs(normals @ w).min() < 1e-6
        # definite interior points agree
        inside = gens.sum(axis=0)
        assert cone_interior(inside, gens) and cone_interior_lp(inside, gens)


def test_strong_containment_clause(rng):
    for _ in range(10):
        u1, u2 = random_co_pair(rng)
        f1 = null_frame(u1)
        a, b = rng.uniform(0.05, 1.5, size=2)
        z = a * np.asarray(f1.x_minus) - b * np.asarray(f1.x_plus)
        pts = sample_crooked_plane(CrookedPlane(z, u1), 12)
        hs = CrookedHalfspace(O, u1)
        opposite_open = halfspace_mask(pts, hs.opposite)
        assert not opposite_open.any()


def test_distance_against_sampling(rng):
    cp = CrookedPlane(np.array([0.1, -0.2, 0.3]), np.array([1.0, 0.5, 0.2]))
    cloud = sample_crooked_plane(cp, 80)
    for _ in range(10):
        q = rng.normal(size=3) * 1.5
        closed = distance_to_crooked_plane(q, cp)
        sampled = np.sqrt(((cloud - q) ** 2).sum(axis=1)).min()
        assert closed <= sampled + 1e-9
        assert sampled - closed < 0.2  # cloud is dense enough nearby


def test_projection_lands_on_plane(rng):
    cp = CrookedPlane(np.array([0.3, 0.1, -0.2]), np.array([0.5, -1.0, 0.3]))
    pts = rng.normal(size=(50, 3)) * 2
    proj, dist = project_to_crooked_plane(pts, cp)
    for p, q, d in zip(proj, pts, dist):
        assert in_crooked_plane(p, cp, 1e-7)
        assert abs(np.linalg.norm(p - q) - d) < 1e-9


def test_affine_certificate():
    u1 = U1
    u2 = np.array([-2.0, 0, 1])
    f1, f2 = null_frame(u1), null_frame(u2)
    z1 = np.asarray(f1.x_minus) - np.asarray(f1.x_plus)
    z2 = np.asarray(f2.x_minus) - np.asarray(f2.x_plus)
    cp1 = CrookedPlane(z1, u1)
    cp2 = CrookedPlane(z2, u2)
    cert = affine_disjointness_certificate(cp1, cp2, budget=20)
    assert cert.contained_in_halfspace
    assert cert.min_separation > 0

    same = affine_disjointness_certificate(cp1, cp1, budget=12)
    assert same.min_separation == 0.0

    shared = affine_disjointness_certificate(CrookedPlane(O, u1),
                                             CrookedPlane(O, u2), budget=12)
    assert shared.contained_in_halfspace
    assert shared.min_separation == 0.0
