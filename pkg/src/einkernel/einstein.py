"""Projective model of the 3-dimensional Einstein universe.

Points are projective classes of null 5-vectors of R^{3,2}; photons are
projectivized totally isotropic 2-planes.  Minkowski space embeds through

    iota(v) = ((1 - <v,v>)/2 : v1 : v2 : v3 : (1 + <v,v>)/2),

a conformal map onto the complement of the lightcone of
``p_inf = (-1:0:0:0:1)``; ``p_0 = iota(0) = (1:0:0:0:1)``.  Crooked surfaces
are group translates of conformally compactified crooked planes, carried
around as (motion, vertex, director, extension) records whose membership
predicate delegates to the affine kernel on the Minkowski patch and to the
two scaffolding photons at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import tolerances
from .crooked import (CrookedPlane, Extension, canonical_director,
                      in_crooked_plane)
from .exact import is_exact, nullspace as exact_nullspace
from .forms import CausalClass, causal_class, form21, form32, null_frame
from .group import Iso32, identity, in_identity_component, lift_linear, lift_translation
from .exceptions import (AtInfinity, DegenerateData, GeometryError,
                         IncidentPoints, SamePoint)


def _pred_tol(tol):
    return tolerances.EPS_PRED if tol is None else tol


def project_null(v) -> np.ndarray:
    """Retract a 5-vector onto the null quadric (unit S^2 x S^1 model).

    Rescales the positive block (first three coordinates) and the negative
    block (last two) to equal Euclidean size; fails for vectors with a
    vanishing block, which are far from the quadric anyway.
    """
    v = np.asarray(v, dtype=float)
    a = np.linalg.norm(v[..., :3], axis=-1, keepdims=True)
    b = np.linalg.norm(v[..., 3:], axis=-1, keepdims=True)
    if np.any(a <= 0) or np.any(b <= 0):
        raise ValueError("vector has a vanishing definite block")
    return np.concatenate([v[..., :3] / a, v[..., 3:] / b], axis=-1)


def normalize_rep(v) -> np.ndarray:
    """Canonical representative: unit Euclidean norm, positive leading entry.

    Exact vectors are normalized by their first nonzero coordinate instead,
    keeping everything rational.
    """
    v = np.asarray(v)
    if is_exact(v):
        for c in v:
            if c != 0:
                return v / c
        raise ValueError("zero vector has no projective class")
    n = np.linalg.norm(v)
    if n == 0.0 or not np.isfinite(n):
        raise ValueError("zero or non-finite vector has no projective class")
    v = v / n
    for c in v:
        if abs(c) > 1e-14:
            return v if c > 0 else -v
    raise ValueError("zero vector has no projective class")


@dataclass(frozen=True)
class EinPoint:
    """Projective class of a null 5-vector, stored canonically normalized."""

    rep: np.ndarray

    def __post_init__(self):
        rep = normalize_rep(self.rep)
        q = form32(rep, rep)
        if is_exact(rep):
            if q != 0:
                raise ValueError(f"representative is not null: <v,v> = {q}")
        elif abs(float(q)) > tolerances.EPS_CAUSAL * 10:
            raise ValueError(f"representative is not null: <v,v> = {q}")
        object.__setattr__(self, "rep", rep)

    @property
    def exact(self) -> bool:
        return is_exact(self.rep)

    def as_float(self) -> "EinPoint":
        return EinPoint(np.asarray(self.rep, dtype=float)) if self.exact else self

    def __eq__(self, other):
        if not isinstance(other, EinPoint):
            return NotImplemented
        return same_point(self, other)

    def __repr__(self):
        coords = ":".join(str(c) for c in self.rep)
        return f"EinPoint({coords})"


def same_point(p: EinPoint, q: EinPoint, tol=None) -> bool:
    if p.exact and q.exact:
        return bool(np.array_equal(p.rep, q.rep))
    a = np.asarray(p.rep, dtype=float)
    b = np.asarray(q.rep, dtype=float)
    eps = _pred_tol(tol)
    return min(float(np.abs(a - b).max()), float(np.abs(a + b).max())) <= eps


def point(*coords, exact=False) -> EinPoint:
    if exact:
        return EinPoint(np.array([Fraction(c) if not isinstance(c, Fraction) else c
                                  for c in coords], dtype=object))
    return EinPoint(np.array(coords, dtype=float))


P0 = point(1.0, 0.0, 0.0, 0.0, 1.0)
PINF = point(-1.0, 0.0, 0.0, 0.0, 1.0)
F1 = point(0.0, 0.0, 1.0, 1.0, 0.0)
F2 = point(0.0, 0.0, -1.0, 1.0, 0.0)


# ---------------------------------------------------------------------------
# embedding and incidence
# ---------------------------------------------------------------------------

def embed_rep(v) -> np.ndarray:
    """Raw (unnormalized) lift of iota(v); works on batches of rows."""
    v = np.asarray(v)
    q = form21(v, v)
    half = Fraction(1, 2) if is_exact(v) else 0.5
    one = Fraction(1) if is_exact(v) else 1.0
    lead = (one - q) * half
    tail = (one + q) * half
    return np.stack([lead, v[..., 0], v[..., 1], v[..., 2], tail], axis=-1)


def embed(v) -> EinPoint:
    """Conformal embedding of a Minkowski vector (or affine point)."""
    return EinPoint(embed_rep(np.asarray(v)))


def unembed_rep(rep, tol=None) -> np.ndarray:
    """Inverse chart: (x2, x3, x4) / (x1 + x5); raises at infinity."""
    rep = np.asarray(rep)
    s = rep[..., 0] + rep[..., 4]
    if is_exact(rep):
        if np.ndim(s) == 0 and s == 0:
            raise AtInfinity("point lies on the lightcone at infinity")
    else:
        mag = np.linalg.norm(np.asarray(rep, dtype=float), axis=-1)
        if np.any(np.abs(np.asarray(s, dtype=float)) <= _pred_tol(tol) * mag):
            raise AtInfinity("point lies on the lightcone at infinity")
    return np.stack([rep[..., 1] / s, rep[..., 2] / s, rep[..., 3] / s], axis=-1)


def unembed(q: EinPoint, tol=None) -> np.ndarray:
    return unembed_rep(q.rep, tol)


def on_infinity_cone(rep, tol=None) -> bool:
    rep = np.asarray(rep)
    s = rep[..., 0] + rep[..., 4]
    if is_exact(rep):
        return s == 0
    return abs(float(s)) <= _pred_tol(tol) * float(np.linalg.norm(np.asarray(rep, dtype=float)))


def incident(p: EinPoint, q: EinPoint, tol=None) -> bool:
    """Two distinct points lie on a common photon iff their lifts pair to 0."""
    if same_point(p, q, tol):
        raise SamePoint("incidence needs two distinct points")
    val = form32(p.rep, q.rep)
    if p.exact and q.exact:
        return val == 0
    return abs(float(val)) <= _pred_tol(tol)


def lightcone_contains(q: EinPoint, p: EinPoint, tol=None) -> bool:
    """Membership of q in the lightcone of p (q = p counts)."""
    if same_point(p, q, tol):
        return True
    return incident(p, q, tol)


# ---------------------------------------------------------------------------
# photons
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Photon:
    """Projectivized totally isotropic 2-plane, spanned by two points."""

    a: EinPoint
    b: EinPoint

    def __post_init__(self):
        if not incident(self.a, self.b):
            raise IncidentPoints("the two basis points do not span a photon")

    def basis(self) -> np.ndarray:
        return np.stack([np.asarray(self.a.rep, dtype=float),
                         np.asarray(self.b.rep, dtype=float)])

    def contains(self, q: EinPoint, tol=None) -> bool:
        """Residual test: q's lift lies in the isotropic span."""
        eps = _pred_tol(tol)
        basis = self.basis()
        qv = np.asarray(q.rep, dtype=float)
        # orthogonality (w.r.t. the form) plus Euclidean span residual
        if abs(float(form32(qv, basis[0]))) > eps or abs(float(form32(qv, basis[1]))) > eps:
            return False
        qmat, _ = np.linalg.qr(basis.T)
        resid = qv - qmat @ (qmat.T @ qv)
        return float(np.linalg.norm(resid)) <= eps

    def sample(self, n: int) -> list:
        """n points around the photon circle (projectively injective)."""
        basis = self.basis()
        ts = np.linspace(0.0, np.pi, n, endpoint=False)
        return [EinPoint(np.cos(t) * basis[0] + np.sin(t) * basis[1]) for t in ts]


def photon_through(p: EinPoint, q: EinPoint) -> Photon:
    return Photon(p, q)


def photon_intersection(ph1: Photon, ph2: Photon, tol=None):
    """Common point of two photons, or None when they are disjoint."""
    eps = 1e-9 if tol is None else tol
    a = np.concatenate([ph1.basis(), ph2.basis()], axis=0)  # rows span both
    # rank 4 means the two isotropic planes are transverse (no common point)
    s = np.linalg.svd(a, compute_uv=False)
    if s[3] > eps * s[0]:
        return None
    # rank 3: one common direction; it lies in both row spans
    b1 = ph1.basis()
    b2 = ph2.basis()
    m = np.concatenate([b1.T, -b2.T], axis=1)  # 5x4: b1^T c1 = b2^T c2
    _, sm, vmt = np.linalg.svd(m)
    coeff = vmt[-1]
    vec = b1.T @ coeff[:2]
    if np.linalg.norm(vec) < 1e-12:
        return None
    return EinPoint(vec)


# ---------------------------------------------------------------------------
# frame transport and lightcone intersections
# ---------------------------------------------------------------------------

_A0 = np.array([-1.0, 0.0, 0.0, 0.0, 1.0])
_B0 = np.array([1.0, 0.0, 0.0, 0.0, 1.0])
# inverse of the column matrix [a0, b0, e2, e3, e4], precomputed
_M0_INV = np.array([
    [-0.5, 0.0, 0.0, 0.0, 0.5],
    [0.5, 0.0, 0.0, 0.0, 0.5],
    [0.0, 1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0, 0.0],
])


def _form_complement_basis(span_vectors, candidates=None, tol=1e-9):
    """Form-orthonormal basis (+,+,-) of the form-complement of the span.

    Candidates are projected off the span (using dual functionals) and
    Gram-Schmidt runs with respect to the indefinite form, preferring the
    standard basis so that standard inputs give standard outputs.
    """
    span = [np.asarray(v, dtype=float) for v in span_vectors]
    if candidates is None:
        candidates = [np.eye(5)[i] for i in (1, 2, 3, 0, 4)]

    gram = np.array([[float(form32(x, y)) for y in span] for x in span])
    try:
        gram_inv = np.linalg.inv(gram)
    except np.linalg.LinAlgError:
        raise GeometryError("degenerate span in frame transport")

    def project_off(x):
        coords = np.array([float(form32(x, s)) for s in span])
        return x - np.array(span).T @ (gram_inv @ coords)

    spacelike, timelike = [], []
    for cand in candidates:
        w = project_off(np.asarray(cand, dtype=float))
        for b, sgn in spacelike + timelike:
            w = w - sgn * float(form32(w, b)) * b
        q = float(form32(w, w))
        if abs(q) <= tol * max(1.0, float(w @ w)):
            continue
        b = w / np.sqrt(abs(q))
        if q > 0 and len(spacelike) < 2:
            spacelike.append((b, 1.0))
        elif q < 0 and len(timelike) < 1:
            timelike.append((b, -1.0))
        if len(spacelike) == 2 and len(timelike) == 1:
            return [spacelike[0][0], spacelike[1][0], timelike[0][0]]
    raise GeometryError("could not complete a frame; degenerate configuration")


def transport_pair(p: EinPoint, q: EinPoint) -> Iso32:
    """Form-preserving matrix carrying (p_inf, p_0) to (p, q).

    Deterministic, and the identity on the standard pair.  Requires p, q
    non-incident.
    """
    if incident(p, q):
        raise IncidentPoints("cannot transport onto an incident pair")
    va = np.asarray(p.rep, dtype=float)
    vb = np.asarray(q.rep, dtype=float)
    vb = vb * (-2.0 / float(form32(va, vb)))
    w1, w2, w3 = _form_complement_basis([va, vb])
    m1 = np.column_stack([va, vb, w1, w2, w3])
    return Iso32(m1 @ _M0_INV)


def lightcone_intersection(p: EinPoint, q: EinPoint):
    """The spacelike circle where two lightcones meet, as ``t -> EinPoint``.

    For the standard pair this is exactly ``t -> (0 : cos t : sin t : 1 : 0)``;
    other pairs receive the transported parametrization.
    """
    if incident(p, q):
        raise IncidentPoints("incident lightcones meet in a photon, not a circle")
    g = transport_pair(p, q)

    def curve(t):
        t = np.asarray(t, dtype=float)
        raw = np.stack([np.zeros_like(t), np.cos(t), np.sin(t),
                        np.ones_like(t), np.zeros_like(t)], axis=-1)
        out = g.apply_vec(raw)
        if out.ndim == 1:
            return EinPoint(out)
        return [EinPoint(row) for row in out]

    curve.transport = g
    return curve


# ---------------------------------------------------------------------------
# Einstein tori and torus data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EinTorus:
    """Projectivized null locus of the orthogonal complement of a spacelike vector."""

    normal: np.ndarray

    def __post_init__(self):
        n = np.asarray(self.normal)
        if causal_class(n) is not CausalClass.SPACELIKE:
            raise ValueError("torus normal must be spacelike")
        object.__setattr__(self, "normal", normalize_rep(n))

    def contains(self, q: EinPoint, tol=None) -> bool:
        val = form32(self.normal, q.rep)
        if is_exact(self.normal) and q.exact:
            return val == 0
        return abs(float(val)) <= _pred_tol(tol)


@dataclass(frozen=True)
class TorusData:
    """Four-point configuration {p1, p2, f1, f2} inducing an Einstein torus."""

    p1: EinPoint
    p2: EinPoint
    f1: EinPoint
    f2: EinPoint
    validate: bool = True

    def __post_init__(self):
        if not self.validate:
            return
        if incident(self.p1, self.p2):
            raise IncidentPoints("p1, p2 must be non-incident")
        if same_point(self.f1, self.f2):
            raise SamePoint("f1, f2 must be distinct")
        for f in (self.f1, self.f2):
            if not (incident(f, self.p1) and incident(f, self.p2)):
                raise DegenerateData("f1, f2 must lie on both lightcones")

    def lifts(self) -> np.ndarray:
        return np.stack([np.asarray(x.rep, dtype=float)
                         for x in (self.p1, self.p2, self.f1, self.f2)])


def torus_from_data(data: TorusData, tol=1e-9) -> EinTorus:
    """Spacelike normal orthogonal to all four lifts (unique up to sign)."""
    if data.p1.exact and data.p2.exact and data.f1.exact and data.f2.exact:
        rows = np.stack([data.p1.rep, data.p2.rep, data.f1.rep, data.f2.rep])
        rows = rows * np.array([[1, 1, 1, -1, -1]], dtype=object)
        basis = exact_nullspace(rows)
        if len(basis) != 1:
            raise DegenerateData("lifts do not span a 4-dimensional subspace")
        return EinTorus(basis[0])
    lifts = data.lifts()
    rows = lifts * np.array([1.0, 1.0, 1.0, -1.0, -1.0])
    _, s, vt = np.linalg.svd(rows)
    if s[3] <= tol * s[0]:
        raise DegenerateData("lifts do not span a 4-dimensional subspace")
    return EinTorus(vt[-1])


# ---------------------------------------------------------------------------
# crooked surfaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CrookedSurface:
    """motion . conf(CP(vertex, director)) with the given wing extension."""

    motion: Iso32
    vertex: np.ndarray
    director: np.ndarray
    extension: Extension = Extension.POSITIVE
    _scaffold: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        cp = CrookedPlane(self.vertex, self.director, self.extension)  # validates
        object.__setattr__(self, "vertex", cp.vertex)
        object.__setattr__(self, "director", cp.director)
        object.__setattr__(self, "_scaffold", _scaffolding(cp))

    @property
    def plane(self) -> CrookedPlane:
        return CrookedPlane(self.vertex, self.director, self.extension)

    # scaffolding photons in standard (pre-motion) position
    @property
    def phi_inf_std(self) -> Photon:
        return self._scaffold["phi_inf"]

    @property
    def psi_inf_std(self) -> Photon:
        return self._scaffold["psi_inf"]

    @property
    def phi_p_std(self) -> Photon:
        return self._scaffold["phi_p"]

    @property
    def psi_p_std(self) -> Photon:
        return self._scaffold["psi_p"]

    def scaffolding(self) -> dict:
        """The four scaffolding photons, pushed through the motion."""
        out = {}
        for name, ph in self._scaffold.items():
            out[name] = Photon(apply(self.motion, ph.a), apply(self.motion, ph.b))
        return out

    def transformed(self, g: Iso32) -> "CrookedSurface":
        return CrookedSurface(g @ self.motion, self.vertex, self.director,
                              self.extension)


def _scaffolding(cp: CrookedPlane) -> dict:
    """Scaffolding photons of conf(CP(p,u)) in standard position.

    phi's attach to the x_plus wing, psi's to the x_minus wing:
    phi_inf is the photon at infinity through (0 : x_plus : 0); phi_p the
    closure of the embedded null line p + R x_plus, which adds the single
    ideal point (-p.x_plus : x_plus : p.x_plus).
    """
    frame = null_frame(np.asarray(cp.director, dtype=float))
    p = np.asarray(cp.vertex, dtype=float)
    out = {}
    for name_inf, name_p, x in (("phi_inf", "phi_p", frame.x_plus),
                                ("psi_inf", "psi_p", frame.x_minus)):
        ideal = EinPoint(np.concatenate([[0.0], x, [0.0]]))
        out[name_inf] = Photon(PINF, ideal)
        px = float(form21(p, x))
        corner = EinPoint(np.concatenate([[-px], x, [px]]))
        out[name_p] = Photon(embed(p), corner)
    return out


def compactify(cp: CrookedPlane) -> CrookedSurface:
    """Conformal compactification of an affine crooked plane."""
    return CrookedSurface(identity(), cp.vertex, cp.director, cp.extension)


def apply(g: Iso32, q: EinPoint) -> EinPoint:
    """Projective action of a group element on a point."""
    return EinPoint(g.apply_vec(np.asarray(q.rep, dtype=float)
                                if not (g.exact and q.exact) else q.rep))


def in_crooked_surface(q: EinPoint, surface: CrookedSurface, tol=None) -> bool:
    """Membership: affine predicate on the Minkowski patch, photons at infinity."""
    rep = surface.motion.inv().apply_vec(np.asarray(q.rep, dtype=float))
    rep = normalize_rep(rep)
    if on_infinity_cone(rep, tol):
        qq = EinPoint(rep)
        return (surface.phi_inf_std.contains(qq, tol)
                or surface.psi_inf_std.contains(qq, tol))
    return in_crooked_plane(unembed_rep(rep, tol), surface.plane, tol)


def surface_torus_data(surface: CrookedSurface) -> TorusData:
    """Torus data spanning the surface: images of (iota(p), p_inf, f1, f2).

    f1 and f2 are the ideal endpoints of the stem's null boundary rays,
    (0 : x_minus : 0) and (0 : x_plus : 0); they do not depend on the vertex.
    """
    frame = null_frame(np.asarray(surface.director, dtype=float))
    g = surface.motion
    return TorusData(
        p1=apply(g, embed(np.asarray(surface.vertex, dtype=float))),
        p2=apply(g, PINF),
        f1=apply(g, EinPoint(np.concatenate([[0.0], frame.x_minus, [0.0]]))),
        f2=apply(g, EinPoint(np.concatenate([[0.0], frame.x_plus, [0.0]]))),
    )


# standard torus data lifts, as columns, and the inverse of that matrix
_TD_COLS = np.column_stack([
    np.array([1.0, 0, 0, 0, 1]),     # p_0
    np.array([-1.0, 0, 0, 0, 1]),    # p_inf
    np.array([0.0, 0, 1, 1, 0]),     # f1
    np.array([0.0, 0, -1, 1, 0]),    # f2
    np.array([0.0, 1, 0, 0, 0]),     # torus normal
])
_TD_INV = np.array([
    [0.5, 0.0, 0.0, 0.0, 0.5],
    [-0.5, 0.0, 0.0, 0.0, 0.5],
    [0.0, 0.0, 0.5, 0.5, 0.0],
    [0.0, 0.0, -0.5, 0.5, 0.0],
    [0.0, 1.0, 0.0, 0.0, 0.0],
])


def surface_from_torus_data(data: TorusData,
                            extension: Extension = Extension.POSITIVE) -> CrookedSurface:
    """Crooked surface spanned by torus data, by frame transport.

    Builds the group element carrying the standard data {p_0, p_inf, f1, f2}
    to the given configuration, forced into the identity component (that is
    the convention realizing one of the paper-level two wing choices), and
    reuses the standard compactified plane.  The extension flag picks the
    positive or negative wings on top of that.
    """
    v1 = np.asarray(data.p1.rep, dtype=float)
    v2 = np.asarray(data.p2.rep, dtype=float)
    x1 = np.asarray(data.f1.rep, dtype=float)
    x2 = np.asarray(data.f2.rep, dtype=float)
    v2 = v2 * (-2.0 / float(form32(v1, v2)))
    x2 = x2 * (-2.0 / float(form32(x1, x2)))
    rows = np.stack([v1, v2, x1, x2]) * np.array([1.0, 1.0, 1.0, -1.0, -1.0])
    _, s, vt = np.linalg.svd(rows)
    if s[3] <= 1e-9 * s[0]:
        raise DegenerateData("lifts do not span a 4-dimensional subspace")
    n = vt[-1]
    qn = float(form32(n, n))
    if qn <= 0:
        raise DegenerateData("normal direction is not spacelike")
    n = n / np.sqrt(qn)
    for ev, ex, en in ((s1, s2, s3) for s1 in (1.0, -1.0)
                       for s2 in (1.0, -1.0) for s3 in (1.0, -1.0)):
        m1 = np.column_stack([ev * v1, ev * v2, ex * x1, ex * x2, en * n])
        g = Iso32(m1 @ _TD_INV)
        if in_identity_component(g):
            return CrookedSurface(g, np.zeros(3), np.array([1.0, 0, 0]), extension)
    raise GeometryError("no sign choice lands in the identity component")


def nf_standard(q: EinPoint, tol=None) -> bool:
    """Validation predicate: the timelike-future region of the standard data.

    In standard position (chart at p_inf) this is exactly "the affine part
    whose chart image is a timelike vector".
    """
    rep = np.asarray(q.rep, dtype=float)
    if on_infinity_cone(rep, tol):
        return False
    v = unembed_rep(rep, tol)
    return causal_class(v, tol) is CausalClass.TIMELIKE


# ---------------------------------------------------------------------------
# parametrization charts
# ---------------------------------------------------------------------------

def param_chart_rep(phi, theta, t) -> np.ndarray:
    """(cos phi : sin phi cos theta : sin phi sin theta : sin t : cos t)."""
    phi = np.asarray(phi, dtype=float)
    theta = np.asarray(theta, dtype=float)
    t = np.asarray(t, dtype=float)
    sp = np.sin(phi)
    return np.stack(np.broadcast_arrays(np.cos(phi), sp * np.cos(theta),
                                        sp * np.sin(theta), np.sin(t),
                                        np.cos(t)), axis=-1)


def param_chart(phi, theta, t) -> EinPoint:
    return EinPoint(param_chart_rep(phi, theta, t))


def param_grid(n_phi: int, n_theta: int, n_t: int) -> np.ndarray:
    """Probe grid covering the whole space once (t in [0, pi))."""
    phi = np.linspace(0.0, np.pi, n_phi)
    theta = np.linspace(0.0, 2 * np.pi, n_theta, endpoint=False)
    t = np.linspace(0.0, np.pi, n_t, endpoint=False)
    pp, tt, ss = np.meshgrid(phi, theta, t, indexing="ij")
    return param_chart_rep(pp.ravel(), tt.ravel(), ss.ravel())


def cylinder_coords(q: EinPoint, tol=1e-12):
    """Figure-model coordinates: stereographic disk at height t, or None.

    Lifts to the double cover with t in [0, pi) (ties at pi resolve to 0
    after the antipodal flip), maps the sphere slice stereographically from
    the south pole to the disk at height h = t, and reports None for points
    on the removed circle (the south pole of every slice).
    """
    rep = np.asarray(q.rep, dtype=float)
    r2 = np.hypot(rep[3], rep[4])
    t = float(np.arctan2(rep[3], rep[4]))
    if t < 0 or abs(t - np.pi) <= tol:
        rep = -rep
        t = float(np.arctan2(rep[3], rep[4]))
        if abs(t - np.pi) <= tol:
            t = 0.0
    sphere = rep[:3] / np.linalg.norm(rep[:3])
    denom = 1.0 + sphere[0]
    if denom <= tol:
        return None
    return (float(sphere[1] / denom), float(sphere[2] / denom), t)
