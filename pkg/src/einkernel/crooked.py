"""Crooked planes, halfspaces, stem quadrants and affine disjointness.

Everything in this module happens in the affine Minkowski 3-space ``E``
modeled on R^{2,1}.  A crooked plane with vertex ``p`` and spacelike director
``u`` is the union of

* the stem: ``p + {w in u-perp : <w,w> <= 0}``,
* two wings: closed null halfplanes attached along the stem's null boundary
  rays ``R*x_plus(u)`` and ``R*x_minus(u)``.

The positively extended plane takes the wing of ``x_plus`` on the ``+u`` side
and the wing of ``x_minus`` on the ``-u`` side; the negative extension swaps
both sides.  As point sets the plane only depends on (p, +-u), so directors
are stored with a canonical sign.

The complement of a crooked plane has two components, the crooked halfspaces
H(p,u) and H(p,-u); H(p,u) is the one containing the interior of the stem
quadrant ``Quad(p,u) = p + {a*x_minus - b*x_plus : a,b >= 0}``.  Membership in
H(p,u) is decided by a closed three-case sign formula (see ``in_halfspace``)
that was calibrated against, and is tested against, a region-growing
classification oracle (``classify_halfspace_by_components``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import linprog

from . import tolerances
from .exact import is_exact
from .forms import (CausalClass, causal_class, euclid_norm_sq, form21,
                    null_frame, orientation_det)
from .exceptions import (BadWingData, NotAllowable, NotConsistentlyOriented,
                         NotSpacelike)

ORIGIN3 = np.zeros(3)


class Extension(Enum):
    POSITIVE = 1
    NEGATIVE = -1


def _pred_tol(tol):
    return tolerances.EPS_PRED if tol is None else tol


def canonical_director(u) -> np.ndarray:
    """Flip sign so the first nonzero coordinate is positive."""
    u = np.asarray(u)
    for c in u:
        if c != 0:
            return np.array(u, copy=True) if c > 0 else -u
    return np.array(u, copy=True)


@dataclass(frozen=True)
class CrookedPlane:
    """Crooked plane record; the director is canonicalized up to sign."""

    vertex: np.ndarray
    director: np.ndarray
    extension: Extension = Extension.POSITIVE

    def __post_init__(self):
        v = np.asarray(self.vertex)
        u = np.asarray(self.director)
        if causal_class(u) is not CausalClass.SPACELIKE:
            raise NotSpacelike(f"director {u!r} is not spacelike")
        object.__setattr__(self, "vertex", np.array(v, copy=True))
        object.__setattr__(self, "director", canonical_director(u))


@dataclass(frozen=True)
class CrookedHalfspace:
    """Open crooked halfspace H(vertex, director); the director sign matters."""

    vertex: np.ndarray
    director: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.director)
        if causal_class(u) is not CausalClass.SPACELIKE:
            raise NotSpacelike(f"director {u!r} is not spacelike")
        object.__setattr__(self, "vertex", np.array(np.asarray(self.vertex), copy=True))
        object.__setattr__(self, "director", np.array(u, copy=True))

    @property
    def boundary(self) -> CrookedPlane:
        return CrookedPlane(self.vertex, self.director)

    @property
    def opposite(self) -> "CrookedHalfspace":
        return CrookedHalfspace(self.vertex, -self.director)


@dataclass(frozen=True)
class StemQuadrant:
    """Quad(vertex, director) = vertex + {a*x_minus - b*x_plus : a,b >= 0}."""

    vertex: np.ndarray
    director: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.director)
        if causal_class(u) is not CausalClass.SPACELIKE:
            raise NotSpacelike(f"director {u!r} is not spacelike")
        object.__setattr__(self, "vertex", np.array(np.asarray(self.vertex), copy=True))
        object.__setattr__(self, "director", np.array(u, copy=True))


@dataclass(frozen=True)
class AllowablePair:
    """Displacements (z1, z2) into the two stem quadrants at a shared vertex."""

    z1: np.ndarray
    z2: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "z1", np.array(np.asarray(self.z1), copy=True))
        object.__setattr__(self, "z2", np.array(np.asarray(self.z2), copy=True))


# ---------------------------------------------------------------------------
# membership predicates
# ---------------------------------------------------------------------------

def in_stem(q, p, u, tol=None) -> bool:
    """True iff w = q - p satisfies w.u = 0 and <w,w> <= 0."""
    u = np.asarray(u)
    if causal_class(u) is not CausalClass.SPACELIKE:
        raise NotSpacelike(f"director {u!r} is not spacelike")
    w = np.asarray(q) - np.asarray(p)
    wu = form21(w, u)
    ww = form21(w, w)
    if is_exact(w) and is_exact(u):
        return wu == 0 and ww <= 0
    eps = _pred_tol(tol)
    scale = 1.0 + np.sqrt(float(euclid_norm_sq(w) * euclid_norm_sq(u)))
    wscale = 1.0 + float(euclid_norm_sq(w))
    return abs(float(wu)) <= eps * scale and float(ww) <= eps * wscale


def in_wing(q, p, x, seed, tol=None) -> bool:
    """Wing membership: w.x = 0 and w.seed >= 0 for w = q - p.

    ``x`` must be future-pointing lightlike and ``seed`` spacelike with
    ``seed.x = 0``; the wing is the closed halfplane of ``x``-perp on the
    ``seed`` side, bounded by the line ``R*x``.
    """
    x = np.asarray(x)
    seed = np.asarray(seed)
    eps = _pred_tol(tol)
    if causal_class(x) is not CausalClass.LIGHTLIKE or not x[2] > 0:
        raise BadWingData(f"wing normal {x!r} is not future lightlike")
    if causal_class(seed) is not CausalClass.SPACELIKE:
        raise BadWingData(f"wing seed {seed!r} is not spacelike")
    xs = form21(x, seed)
    if is_exact(x) and is_exact(seed):
        if xs != 0:
            raise BadWingData("seed is not orthogonal to the wing normal")
    elif abs(float(xs)) > eps * (1.0 + np.sqrt(float(euclid_norm_sq(x) * euclid_norm_sq(seed)))):
        raise BadWingData("seed is not orthogonal to the wing normal")
    w = np.asarray(q) - np.asarray(p)
    wx = form21(w, x)
    wseed = form21(w, seed)
    if is_exact(w) and is_exact(x):
        return wx == 0 and wseed >= 0
    exs = eps * (1.0 + np.sqrt(float(euclid_norm_sq(w) * euclid_norm_sq(x))))
    ese = eps * (1.0 + np.sqrt(float(euclid_norm_sq(w) * euclid_norm_sq(seed))))
    return abs(float(wx)) <= exs and float(wseed) >= -ese


def wing_seeds(u, extension=Extension.POSITIVE):
    """Seeds for the (x_plus, x_minus) wings of CP(p, u) with this extension."""
    u = np.asarray(u)
    if extension is Extension.POSITIVE:
        return u, -u
    return -u, u


def in_crooked_plane(q, cp: CrookedPlane, tol=None) -> bool:
    """Union-of-pieces membership for a crooked plane."""
    frame = null_frame(cp.director, tol)
    seed_plus, seed_minus = wing_seeds(cp.director, cp.extension)
    return (in_stem(q, cp.vertex, cp.director, tol)
            or in_wing(q, cp.vertex, frame.x_plus, seed_plus, tol)
            or in_wing(q, cp.vertex, frame.x_minus, seed_minus, tol))


def in_halfspace(q, hs: CrookedHalfspace, tol=None) -> bool:
    """Closed-form membership in the open halfspace H(vertex, director).

    With w = q - vertex and the director's null frame::

        w.u > 0:  require w.x_plus < 0
        w.u = 0:  require w.x_plus < 0 < w.x_minus
        w.u < 0:  require w.x_minus > 0

    The formula is validated against the region-growing oracle; see
    ``classify_halfspace_by_components``.
    """
    frame = null_frame(hs.director, tol)
    w = np.asarray(q) - np.asarray(hs.vertex)
    u = np.asarray(hs.director)
    wu = form21(w, u)
    wxp = form21(w, frame.x_plus)
    wxm = form21(w, frame.x_minus)
    if is_exact(w) and is_exact(u):
        if wu > 0:
            return wxp < 0
        if wu < 0:
            return wxm > 0
        return wxp < 0 < wxm
    eps = _pred_tol(tol)
    eu = eps * (1.0 + np.sqrt(float(euclid_norm_sq(w) * euclid_norm_sq(u))))
    ep = eps * (1.0 + np.sqrt(float(euclid_norm_sq(w) * euclid_norm_sq(frame.x_plus))))
    em = eps * (1.0 + np.sqrt(float(euclid_norm_sq(w) * euclid_norm_sq(frame.x_minus))))
    if wu > eu:
        return wxp < -ep
    if wu < -eu:
        return wxm > em
    return wxp < -ep and wxm > em


def halfspace_mask(points, hs: CrookedHalfspace, tol=None):
    """Vectorized ``in_halfspace`` over an (N,3) float array."""
    frame = null_frame(hs.director, tol)
    w = np.asarray(points, dtype=float) - np.asarray(hs.vertex, dtype=float)
    u = np.asarray(hs.director, dtype=float)
    eps = _pred_tol(tol)
    wn = np.sqrt(euclid_norm_sq(w))
    wu = form21(w, u)
    wxp = form21(w, frame.x_plus)
    wxm = form21(w, frame.x_minus)
    eu = eps * (1.0 + wn * np.sqrt(euclid_norm_sq(u)))
    ep = eps * (1.0 + wn * np.sqrt(euclid_norm_sq(frame.x_plus)))
    em = eps * (1.0 + wn * np.sqrt(euclid_norm_sq(frame.x_minus)))
    return ((wu > eu) & (wxp < -ep)
            | (np.abs(wu) <= eu) & (wxp < -ep) & (wxm > em)
            | (wu < -eu) & (wxm > em))


def stem_quadrant_coefficients(q, sq: StemQuadrant, tol=None):
    """Solve q - vertex = alpha*u + a*x_minus - b*x_plus; returns (alpha, a, b)."""
    frame = null_frame(sq.director, tol)
    w = np.asarray(q, dtype=float) - np.asarray(sq.vertex, dtype=float)
    basis = np.column_stack([np.asarray(sq.director, dtype=float),
                             np.asarray(frame.x_minus, dtype=float),
                             -np.asarray(frame.x_plus, dtype=float)])
    alpha, a, b = np.linalg.solve(basis, w)
    return alpha, a, b


def in_stem_quadrant(q, sq: StemQuadrant, tol=None) -> bool:
    """True iff q - vertex = a*x_minus - b*x_plus with a, b >= 0."""
    eps = _pred_tol(tol)
    alpha, a, b = stem_quadrant_coefficients(q, sq, tol)
    w = np.asarray(q, dtype=float) - np.asarray(sq.vertex, dtype=float)
    scale = 1.0 + np.sqrt(float(euclid_norm_sq(w)))
    return abs(alpha) <= eps * scale and a >= -eps * scale and b >= -eps * scale


# ---------------------------------------------------------------------------
# consistent orientation and allowable pairs
# ---------------------------------------------------------------------------

def _lorentz_perp_direction(u1, u2):
    """Direction spanning u1-perp intersect u2-perp (Lorentzian perps)."""
    flip = np.array([1.0, 1.0, -1.0])
    return np.cross(np.asarray(u1, dtype=float) * flip,
                    np.asarray(u2, dtype=float) * flip)


def ultraparallel(u1, u2, tol=None) -> bool:
    """True iff the line u1-perp intersect u2-perp is spacelike."""
    for u in (u1, u2):
        if causal_class(np.asarray(u)) is not CausalClass.SPACELIKE:
            raise NotSpacelike(f"director {u!r} is not spacelike")
    d = _lorentz_perp_direction(u1, u2)
    return causal_class(d, tol) is CausalClass.SPACELIKE


def consistently_oriented(u1, u2, tol=None) -> bool:
    """Closed crooked halfspaces at a common vertex meet only in the vertex.

    Frozen criterion (calibrated against the closure-sampling oracle):
    ultraparallel directors, ``u1.u2 < 0`` and all four pairings
    ``u_i . x^{+-}(u_j)`` strictly negative.  Crossing perpendicular planes
    make two pairings differ in sign, and asymptotic ones force a zero
    pairing, so both are rejected by strictness.
    """
    u1 = np.asarray(u1)
    u2 = np.asarray(u2)
    if not ultraparallel(u1, u2, tol):
        return False
    f1 = null_frame(u1, tol)
    f2 = null_frame(u2, tol)
    pairings = [form21(u1, f2.x_minus), form21(u1, f2.x_plus),
                form21(u2, f1.x_minus), form21(u2, f1.x_plus)]
    return float(form21(u1, u2)) < 0 and all(float(v) < 0 for v in pairings)


def quadrant_cone_coefficients(z, u, tol=None):
    """Coefficients (a, b) with z = a*x_minus - b*x_plus, or None if z not in u-perp."""
    eps = _pred_tol(tol)
    frame = null_frame(u, tol)
    zu = float(form21(z, u))
    if abs(zu) > eps * (1.0 + np.sqrt(float(euclid_norm_sq(z) * euclid_norm_sq(u)))):
        return None
    # In u-perp the pair (x_minus, x_plus) is a basis; solve the 2x2 system
    # via pairings with the (non-degenerate) restricted form.
    xm = np.asarray(frame.x_minus, dtype=float)
    xp = np.asarray(frame.x_plus, dtype=float)
    cross = float(form21(xm, xp))  # negative for distinct future null rays
    a = float(form21(z, xp)) / cross
    b = -float(form21(z, xm)) / cross
    return a, b


def in_quadrant_cone(z, u, tol=None) -> bool:
    """True iff z lies in Quad(o,u) - o."""
    eps = _pred_tol(tol)
    coeffs = quadrant_cone_coefficients(z, u, tol)
    if coeffs is None:
        return False
    scale = 1.0 + np.sqrt(float(euclid_norm_sq(z)))
    return coeffs[0] >= -eps * scale and coeffs[1] >= -eps * scale


def difference_cone_generators(u1, u2, tol=None) -> np.ndarray:
    """Generators of Quad(o,u1) - Quad(o,u2) as rows (4x3)."""
    f1 = null_frame(u1, tol)
    f2 = null_frame(u2, tol)
    return np.array([f1.x_minus, -f1.x_plus, -f2.x_minus, f2.x_plus], dtype=float)


def cone_facet_normals(generators, tol=1e-12):
    """Inward facet normals of the cone spanned by the given rows.

    Returns None when the generators do not span all of R^3 (empty interior).
    """
    gens = np.asarray(generators, dtype=float)
    if np.linalg.matrix_rank(gens, tol=1e-9) < 3:
        return None
    normals = []
    n_gen = gens.shape[0]
    for i in range(n_gen):
        for j in range(i + 1, n_gen):
            n = np.cross(gens[i], gens[j])
            nn = np.linalg.norm(n)
            if nn <= tol:
                continue
            n = n / nn
            dots = gens @ n
            if np.all(dots >= -tol):
                normals.append(n)
            elif np.all(dots <= tol):
                normals.append(-n)
    if not normals:
        return None
    return np.array(normals)


def cone_interior(w, generators, tol=None) -> bool:
    """Interior membership in cone(generators) by facet enumeration."""
    eps = _pred_tol(tol)
    normals = cone_facet_normals(generators)
    if normals is None:
        return False
    w = np.asarray(w, dtype=float)
    scale = 1.0 + np.linalg.norm(w)
    return bool(np.all(normals @ w > eps * scale))


def cone_interior_lp(w, generators, margin=1e-9) -> bool:
    """LP cross-check: maximize t with w - t*sum(gens) in cone(gens)."""
    gens = np.asarray(generators, dtype=float)
    w = np.asarray(w, dtype=float)
    n_gen = gens.shape[0]
    # variables: coefficients c_i >= 0 and t (free);  gens^T c + t*s = w
    s = gens.sum(axis=0)
    a_eq = np.column_stack([gens.T, s])
    c = np.zeros(n_gen + 1)
    c[-1] = -1.0
    bounds = [(0, None)] * n_gen + [(None, None)]
    res = linprog(c, A_eq=a_eq, b_eq=w, bounds=bounds, method="highs")
    return bool(res.status == 0 and res.x[-1] > margin)


def allowable_pair(z1, z2, u1, u2, tol=None) -> bool:
    """Membership of (z1, z2) in the allowable set for (u1, u2).

    Requires consistently oriented directors.  True iff each z_i lies in its
    stem quadrant cone and z1 - z2 lies in the open interior of the difference
    cone spanned by {x_minus(u1), -x_plus(u1), -x_minus(u2), x_plus(u2)}.
    """
    if not consistently_oriented(u1, u2, tol):
        raise NotConsistentlyOriented(f"{u1!r}, {u2!r}")
    if not (in_quadrant_cone(z1, u1, tol) and in_quadrant_cone(z2, u2, tol)):
        return False
    gens = difference_cone_generators(u1, u2, tol)
    return cone_interior(np.asarray(z1, dtype=float) - np.asarray(z2, dtype=float),
                         gens, tol)


# ---------------------------------------------------------------------------
# exact Euclidean distance to a crooked plane
# ---------------------------------------------------------------------------

def _ray_projection(w, ray):
    """Closest points on the ray R+ * ray to the rows of w."""
    r = np.asarray(ray, dtype=float)
    r = r / np.linalg.norm(r)
    t = np.clip(w @ r, 0.0, None)
    return np.outer(t, r)


def project_to_crooked_plane(points, cp: CrookedPlane):
    """Closest plane points and Euclidean distances; rows in, (proj, dist) out.

    The plane decomposes into three convex-ish pieces (two stem sectors, two
    wing halfplanes); projection onto each is closed form and the piecewise
    nearest one wins.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    vert = np.asarray(cp.vertex, dtype=float)
    w = pts - vert
    frame = null_frame(cp.director)
    u = np.asarray(cp.director, dtype=float)
    xm = np.asarray(frame.x_minus, dtype=float)
    xp = np.asarray(frame.x_plus, dtype=float)
    seed_plus, seed_minus = wing_seeds(u, cp.extension)
    flip = np.array([1.0, 1.0, -1.0])

    candidates = []  # (projected points, distances)

    # stem: inside plane u-perp, between the null lines (two sectors)
    n_u = (u * flip)
    n_u = n_u / np.linalg.norm(n_u)
    h = w @ n_u
    w_par = w - np.outer(h, n_u)
    basis = np.column_stack([xm, xp])
    coeff, *_ = np.linalg.lstsq(basis, w_par.T, rcond=None)
    inside = coeff[0] * coeff[1] >= 0.0
    ray_projs = np.stack([_ray_projection(w_par, r)
                          for r in (xm, xp, -xm, -xp)])
    ray_d = np.linalg.norm(ray_projs - w_par[None], axis=2)
    best_ray = np.argmin(ray_d, axis=0)
    on_boundary = ray_projs[best_ray, np.arange(len(pts))]
    proj = np.where(inside[:, None], w_par, on_boundary)
    candidates.append((proj, np.linalg.norm(proj - w, axis=1)))

    # wings: halfplane {w.x = 0, w.seed >= 0} with boundary line R*x
    for x, seed in ((xp, seed_plus), (xm, seed_minus)):
        n_x = x * flip
        n_x = n_x / np.linalg.norm(n_x)
        hx = w @ n_x
        w_par = w - np.outer(hx, n_x)
        side = form21(w_par, seed)
        b1 = x / np.linalg.norm(x)
        on_line = np.outer(w_par @ b1, b1)
        proj = np.where((side >= 0.0)[:, None], w_par, on_line)
        candidates.append((proj, np.linalg.norm(proj - w, axis=1)))

    dists = np.stack([d for _, d in candidates])
    pick = np.argmin(dists, axis=0)
    projs = np.stack([p for p, _ in candidates])
    out = projs[pick, np.arange(len(pts))] + vert
    out_d = dists[pick, np.arange(len(pts))]
    if np.asarray(points).ndim > 1:
        return out, out_d
    return out[0], out_d[0]


def distance_to_crooked_plane(points, cp: CrookedPlane) -> np.ndarray:
    """Exact Euclidean distance from each row of points to the plane's locus."""
    _, dist = project_to_crooked_plane(np.atleast_2d(np.asarray(points, dtype=float)), cp)
    return dist if np.asarray(points).ndim > 1 else dist[0]


# ---------------------------------------------------------------------------
# sampling and the disjointness certificate
# ---------------------------------------------------------------------------

def sample_crooked_plane(cp: CrookedPlane, n: int) -> np.ndarray:
    """Deterministic sample grid on a crooked plane (far field by inversion).

    Stem sectors use polar (radius, mixing angle) parameters, wings use
    (ray, halfplane) parameters; radial coordinates run through r = v/(1-v)
    so the far field is covered up to radius ~n.  The vertex is always the
    first sample.
    """
    frame = null_frame(cp.director)
    u = np.asarray(cp.director, dtype=float)
    xm = np.asarray(frame.x_minus, dtype=float)
    xp = np.asarray(frame.x_plus, dtype=float)
    seed_plus, seed_minus = wing_seeds(u, cp.extension)
    v = np.asarray(cp.vertex, dtype=float)

    rad = np.arange(n) / n
    rad = rad / (1.0 - rad)
    ang = np.linspace(0.0, np.pi / 2.0, n)
    samples = [v.reshape(1, 3)]

    # stem sectors: a*xm + c*xp with a*c >= 0
    ca, sa = np.cos(ang), np.sin(ang)
    for sign in (1.0, -1.0):
        a = sign * np.outer(rad, ca).ravel()
        c = sign * np.outer(rad, sa).ravel()
        samples.append(v + np.outer(a, xm) + np.outer(c, xp))

    # wings: c*x + d*seed with d >= 0
    span = np.arange(-(n // 2), n - n // 2) / n
    span = span / (1.0 - np.abs(span))
    for x, seed in ((xp, seed_plus), (xm, seed_minus)):
        sd = np.asarray(seed, dtype=float)
        sd = sd / np.linalg.norm(sd)
        c = np.repeat(span, n)
        d = np.tile(rad, span.size)
        samples.append(v + np.outer(c, x) + np.outer(d, sd))

    return np.concatenate(samples, axis=0)


@dataclass(frozen=True)
class AffineCertificate:
    contained_in_halfspace: bool
    min_separation: float
    samples_checked: int = 0
    nearest_point: np.ndarray = field(default=None, repr=False)


def affine_disjointness_certificate(cp1: CrookedPlane, cp2: CrookedPlane,
                                    budget: int = 24,
                                    base_point=ORIGIN3) -> AffineCertificate:
    """Sampled separation between two crooked planes, plus containment checks.

    ``min_separation`` is the minimum exact point-to-locus distance over the
    sample grids of both planes (each against the other's full membership
    locus).  ``contained_in_halfspace`` verifies, pointwise on the samples,
    that each plane stays in the closed halfspace at ``base_point`` with its
    own director, which is the first clause of the disjointness theorem when
    the vertices are stem-quadrant displacements of ``base_point``.
    """
    pts1 = sample_crooked_plane(cp1, budget)
    pts2 = sample_crooked_plane(cp2, budget)
    d12 = distance_to_crooked_plane(pts1, cp2)
    d21 = distance_to_crooked_plane(pts2, cp1)
    k = int(np.argmin(d12))
    margin = float(min(d12.min(), d21.min()))

    base = np.asarray(base_point, dtype=float)
    contained = True
    for cp, pts in ((cp1, pts1), (cp2, pts2)):
        hs = CrookedHalfspace(base, cp.director)
        inside = halfspace_mask(pts, hs)
        for idx in np.nonzero(~inside)[0]:
            if not in_crooked_plane(pts[idx], CrookedPlane(base, cp.director)):
                contained = False
                break
        if not contained:
            break
    return AffineCertificate(contained_in_halfspace=contained,
                             min_separation=margin,
                             samples_checked=pts1.shape[0] + pts2.shape[0],
                             nearest_point=pts1[k])


# ---------------------------------------------------------------------------
# region-growing oracle for the halfspace formula
# ---------------------------------------------------------------------------

def classify_halfspace_by_components(hs: CrookedHalfspace, radius: float = 2.0,
                                     n: int = 25, band: float = None):
    """Grid-graph classification of a ball around the vertex.

    Cells within ``band`` of the crooked plane are removed; the remaining
    cells are split into connected components.  The component containing a
    seed deep inside the stem quadrant of ``u`` is labeled +1, the one seeded
    from the opposite quadrant -1, and cells in neither (removed cells, and
    ball-corner crumbs pinched off by the finite radius) are 0.  Used as the
    independent oracle that the closed-form ``in_halfspace`` is tested
    against.  Returns ``(points, labels, blocked)``.
    """
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    u = np.asarray(hs.director, dtype=float)
    u = u / np.linalg.norm(u)
    hs = CrookedHalfspace(hs.vertex, u)
    frame = null_frame(hs.director)
    step = 2.0 * radius / (n - 1)
    if band is None:
        band = 1.2 * step
    axis = np.linspace(-radius, radius, n)
    gx, gy, gz = np.meshgrid(axis, axis, axis, indexing="ij")
    pts = np.column_stack([gx.ravel(), gy.ravel(), gz.ravel()])
    pts = pts + np.asarray(hs.vertex, dtype=float)

    cp = CrookedPlane(hs.vertex, hs.director)
    blocked = distance_to_crooked_plane(pts, cp) < band

    idx = np.arange(n ** 3).reshape(n, n, n)
    edges = []
    for axis_id in range(3):
        sl_a = [slice(None)] * 3
        sl_b = [slice(None)] * 3
        sl_a[axis_id] = slice(0, n - 1)
        sl_b[axis_id] = slice(1, n)
        edges.append(np.column_stack([idx[tuple(sl_a)].ravel(),
                                      idx[tuple(sl_b)].ravel()]))
    edges = np.concatenate(edges, axis=0)
    keep = ~blocked[edges[:, 0]] & ~blocked[edges[:, 1]]
    edges = edges[keep]
    n_nodes = n ** 3
    graph = coo_matrix((np.ones(edges.shape[0]), (edges[:, 0], edges[:, 1])),
                       shape=(n_nodes, n_nodes))
    _, comp = connected_components(graph, directed=False)

    xm = np.asarray(frame.x_minus, dtype=float)
    xp = np.asarray(frame.x_plus, dtype=float)
    labels = np.zeros(n_nodes, dtype=int)
    for sign in (1, -1):
        seed_cell = None
        for a, b in ((1, 1), (2, 1), (1, 2), (3, 1), (1, 3), (1.5, 1.5)):
            vec = a * xm - b * xp
            vec = vec / np.linalg.norm(vec)
            seed_pt = (np.asarray(hs.vertex, dtype=float)
                       + sign * 0.45 * radius * vec)
            cell = int(np.argmin(euclid_norm_sq(pts - seed_pt)))
            if not blocked[cell]:
                seed_cell = cell
                break
        if seed_cell is None:
            raise RuntimeError("oracle seeds all landed in the removed band; "
                               "enlarge the grid")
        labels[comp == comp[seed_cell]] = sign
    labels[blocked] = 0
    return pts, labels, blocked
