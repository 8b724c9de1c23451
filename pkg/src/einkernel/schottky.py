"""Pulling crooked surfaces apart, crooked Schottky systems, word dynamics.

The pull-apart pipeline starts from two compactified crooked planes sharing
a vertex (they intersect in exactly the vertex image and the point at
infinity), separates the vertices with an allowable pair of stem-quadrant
displacements (leaving only the point at infinity), and then conjugates a
second allowable pair by the flip involution to separate the ideal point as
well:

    S_i = (rho tau_{z_i'} rho) . conf(CP(o + z_i, u_i)).

A cyclic crooked Schottky system pairs two such regions through
``eta = tau_2 lift(g) tau_1^{-1}`` with ``tau_i = rho tau_{z_i'} rho tau_{z_i}``
for a hyperbolic Lorentz element g whose walls match the two directors.
Ping-pong, fundamental-domain coverage and nested word images are verified by
deterministic probe grids; nothing here proves properness, it certifies the
finite data the construction promises.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import tolerances
from .crooked import (CrookedHalfspace, CrookedPlane, Extension,
                      allowable_pair, consistently_oriented,
                      distance_to_crooked_plane, halfspace_mask)
from .einstein import (CrookedSurface, EinPoint, compactify, embed,
                       normalize_rep, param_grid, unembed_rep)
from .forms import form21
from .group import Iso32, identity, lift_linear, lift_translation, rho
from .exceptions import (BadFundamentalDomain, NotAllowable, NotHyperbolic,
                         ResolutionTooSmall)


def conjugated_translation(z) -> Iso32:
    """rho tau_z rho: the translation conjugated to fix the origin's image."""
    r = rho()
    return r @ lift_translation(np.asarray(z, dtype=float)) @ r


@dataclass(frozen=True)
class DisjointPairSpec:
    """Directors plus inner and outer allowable pairs for the pull-apart move."""

    u1: np.ndarray
    u2: np.ndarray
    z1: np.ndarray
    z2: np.ndarray
    z1_outer: np.ndarray
    z2_outer: np.ndarray

    def __post_init__(self):
        for name in ("u1", "u2", "z1", "z2", "z1_outer", "z2_outer"):
            object.__setattr__(self, name,
                               np.asarray(getattr(self, name), dtype=float))
        if not consistently_oriented(self.u1, self.u2):
            raise NotAllowable("directors are not consistently oriented")
        if not allowable_pair(self.z1, self.z2, self.u1, self.u2):
            raise NotAllowable("inner pair is not allowable")
        if not allowable_pair(self.z1_outer, self.z2_outer, self.u1, self.u2):
            raise NotAllowable("outer pair is not allowable")


def pull_apart_stage(u1, u2, z1, z2, z1_outer, z2_outer):
    """The two surfaces for arbitrary (possibly zero) displacement pairs."""
    out = []
    for u, z, zo in ((u1, z1, z1_outer), (u2, z2, z2_outer)):
        motion = conjugated_translation(zo)
        out.append(CrookedSurface(motion, np.asarray(z, dtype=float),
                                  np.asarray(u, dtype=float),
                                  Extension.POSITIVE))
    return tuple(out)


def pull_apart(spec: DisjointPairSpec):
    """The fully pulled-apart pair of disjoint crooked surfaces."""
    return pull_apart_stage(spec.u1, spec.u2, spec.z1, spec.z2,
                            spec.z1_outer, spec.z2_outer)


# ---------------------------------------------------------------------------
# region handles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SchottkyRegion:
    """motion . conf(H(vertex, director)): an open region bounded by a surface."""

    motion: Iso32
    halfspace: CrookedHalfspace

    @property
    def boundary_surface(self) -> CrookedSurface:
        return CrookedSurface(self.motion, self.halfspace.vertex,
                              self.halfspace.director, Extension.POSITIVE)

    def classify(self, reps, tol=None):
        """(inside, ambiguous) masks for rows of raw 5-vectors.

        Ambiguous rows are within the tolerance band of the bounding surface
        or of the chart at infinity, where open membership is ill-posed.
        """
        eps = tolerances.EPS_PRED if tol is None else tol
        reps = np.asarray(reps, dtype=float)
        y = reps @ self.motion.inv().as_float().T
        norms = np.linalg.norm(y, axis=1)
        s = y[:, 0] + y[:, 4]
        affine = np.abs(s) > 1e-7 * norms
        inside = np.zeros(len(reps), dtype=bool)
        ambiguous = ~affine
        idx = np.nonzero(affine)[0]
        if idx.size:
            v = y[idx, 1:4] / s[idx, None]
            inside[idx] = halfspace_mask(v, self.halfspace, eps)
            d = distance_to_crooked_plane(v, self.halfspace.boundary)
            vmag = (v * v).sum(axis=1)
            ambiguous[idx] = d <= 1e-7 * (1.0 + vmag)
        return inside, ambiguous

    def contains(self, q: EinPoint, tol=None) -> bool:
        inside, ambiguous = self.classify(np.asarray(q.rep, dtype=float)[None])
        return bool(inside[0] and not ambiguous[0])


@dataclass(frozen=True)
class SchottkySystem:
    """Generators plus paired regions (minus, plus) per generator."""

    generators: tuple          # of Iso32
    regions: tuple             # of (SchottkyRegion, SchottkyRegion)
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def boundary_surfaces(self):
        out = []
        for minus, plus in self.regions:
            out.append(minus.boundary_surface)
            out.append(plus.boundary_surface)
        return out

    def letter(self, index: int, exponent: int) -> Iso32:
        g = self.generators[index]
        return g if exponent > 0 else g.inv()

    def region_for_letter(self, index: int, exponent: int) -> SchottkyRegion:
        """The region a reduced word ending in this letter contracts into.

        ``eta_i`` maps the complement of U_i^- onto cl(U_i^+), so words ending
        in ``eta_i`` target the plus region and inverses the minus one.
        """
        minus, plus = self.regions[index]
        return plus if exponent > 0 else minus


def cyclic_schottky(g, spec: DisjointPairSpec) -> SchottkySystem:
    """Cyclic crooked Schottky system from a hyperbolic Lorentz element.

    ``g`` must have three distinct real eigenvalues and match the walls:
    the ping-pong relation forces ``g u1`` to be a negative multiple of
    ``u2``.  The generator is ``tau_2 lift(g) tau_1^{-1}`` with
    ``tau_i = rho tau_{z_i'} rho tau_{z_i}``; the paired regions are the
    conjugated conformal halfspaces over (o + z_i, u_i).
    """
    g = np.asarray(g, dtype=float)
    eig = np.linalg.eigvals(g)
    if np.abs(eig.imag).max() > 1e-9:
        raise NotHyperbolic("complex eigenvalues")
    lam = np.sort(eig.real)
    if lam[1] - lam[0] <= 1e-9 or lam[2] - lam[1] <= 1e-9:
        raise NotHyperbolic("eigenvalues are not three distinct reals")

    gu1 = g @ spec.u1
    cross = np.cross(gu1, spec.u2)
    if np.linalg.norm(cross) > 1e-9 * np.linalg.norm(gu1) * np.linalg.norm(spec.u2):
        raise BadFundamentalDomain("g does not carry the first wall to the second")
    if float(gu1 @ spec.u2) >= 0:
        raise BadFundamentalDomain("wall images must reverse the director sign")

    tau1 = conjugated_translation(spec.z1_outer) @ lift_translation(spec.z1)
    tau2 = conjugated_translation(spec.z2_outer) @ lift_translation(spec.z2)
    eta = tau2 @ lift_linear(g) @ tau1.inv()

    minus = SchottkyRegion(conjugated_translation(spec.z1_outer),
                           CrookedHalfspace(spec.z1, spec.u1))
    plus = SchottkyRegion(conjugated_translation(spec.z2_outer),
                          CrookedHalfspace(spec.z2, spec.u2))
    return SchottkySystem(generators=(eta,), regions=((minus, plus),),
                          meta={"kind": "cyclic"})


def standard_cyclic_example(rapidity: float = 1.0):
    """A concrete cyclic system: boost walls u1 = e1, u2 = -B(-l) e1.

    Returns (g, spec); the stem-quadrant displacements are the midpoints of
    the two quadrant cones, which always form an allowable pair here.
    """
    from .forms import null_frame
    from .group import lorentz_boost
    g = lorentz_boost(-rapidity)
    u1 = np.array([1.0, 0.0, 0.0])
    u2 = -(g @ u1)
    f1 = null_frame(u1)
    f2 = null_frame(u2)
    z1 = 0.5 * (np.asarray(f1.x_minus) - np.asarray(f1.x_plus))
    z2 = 0.5 * (np.asarray(f2.x_minus) - np.asarray(f2.x_plus))
    spec = DisjointPairSpec(u1=u1, u2=u2, z1=z1, z2=z2,
                            z1_outer=z1, z2_outer=z2)
    return g, spec


# ---------------------------------------------------------------------------
# ping-pong verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PingPongReport:
    consistent_fraction: float
    probes_decided: int
    probes_total: int
    violations: tuple

    def to_jsonable(self):
        return {"consistent_fraction": self.consistent_fraction,
                "probes_decided": self.probes_decided,
                "probes_total": self.probes_total,
                "violations": [list(map(float, v)) for v in self.violations]}


def pingpong_check(system: SchottkySystem, probes: int = 10000,
                   tol=None) -> PingPongReport:
    """Probe the defining relation ``eta_i(U_i^-) = complement of cl(U_i^+)``.

    Probes run over a deterministic parameter grid; each one checks the
    equivalence ``q in U^-  <=>  eta(q) not in cl(U^+)``.  Probes landing in
    a tolerance band of either bounding surface are reported but excluded
    from the fraction; for a valid system the fraction is 1.0.
    """
    n = max(4, int(round(probes ** (1.0 / 3.0))))
    reps = param_grid(n, 2 * n, n)
    violations = []
    decided = 0
    consistent = 0
    for gen, (minus, plus) in zip(system.generators, system.regions):
        in_minus, amb_minus = minus.classify(reps, tol)
        image = reps @ gen.as_float().T
        in_plus, amb_plus = plus.classify(image, tol)
        decidable = ~(amb_minus | amb_plus)
        ok = in_minus == ~in_plus
        decided += int(decidable.sum())
        consistent += int((ok & decidable).sum())
        for i in np.nonzero(~ok & decidable)[0]:
            violations.append(tuple(reps[i]))
    fraction = consistent / decided if decided else 1.0
    return PingPongReport(consistent_fraction=float(fraction),
                          probes_decided=decided,
                          probes_total=int(reps.shape[0] * system.rank),
                          violations=tuple(violations[:64]))


# ---------------------------------------------------------------------------
# reduced words and nested images
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReducedWord:
    """Letters (generator index, +-1) with no adjacent cancellation."""

    letters: tuple

    def __post_init__(self):
        for (i, e), (j, f) in zip(self.letters, self.letters[1:]):
            if i == j and e == -f:
                raise ValueError("word is not reduced")

    def __str__(self):
        out = []
        for i, e in self.letters:
            c = chr(ord("a") + i)
            out.append(c if e > 0 else c.upper())
        return " ".join(out)

    def __len__(self):
        return len(self.letters)

    @property
    def parent(self):
        return ReducedWord(self.letters[:-1]) if self.letters else None


def reduced_words(rank: int, depth: int):
    """All reduced words of length 1..depth, breadth first."""
    current = [ReducedWord((   (i, e),)) for i in range(rank) for e in (1, -1)]
    out = list(current)
    for _ in range(depth - 1):
        nxt = []
        for w in current:
            last_i, last_e = w.letters[-1]
            for i in range(rank):
                for e in (1, -1):
                    if i == last_i and e == -last_e:
                        continue
                    nxt.append(ReducedWord(w.letters + ((i, e),)))
        out.extend(nxt)
        current = nxt
    return out


@dataclass(frozen=True)
class WordImage:
    word: ReducedWord
    diameter: float
    region_index: int
    region_sign: int

    def to_jsonable(self):
        return {"word": str(self.word), "diameter": self.diameter,
                "region": f"U{self.region_index}{'+' if self.region_sign > 0 else '-'}"}


def word_images(system: SchottkySystem, depth: int, mesh_resolution: int = 10):
    """Nested word images ``prefix . cl(U)`` with round-metric diameters.

    For the word ``l_1 ... l_n`` the image region is the closure of the
    region targeted by ``l_n``, pushed by the prefix ``l_1 ... l_{n-1}``;
    the diameter estimate is the max pairwise round distance over the
    transformed boundary mesh.  Diameters are non-increasing along chains.
    """
    from .certify import round_distance_reps
    from .meshing import sample_surface
    if depth < 1:
        raise ResolutionTooSmall("need depth >= 1")

    clouds = {}
    for i, (minus, plus) in enumerate(system.regions):
        for sign, region in ((-1, minus), (1, plus)):
            mesh = sample_surface(region.boundary_surface, mesh_resolution)
            cloud = mesh.vertices / np.linalg.norm(mesh.vertices, axis=1,
                                                   keepdims=True)
            clouds[(i, sign)] = cloud

    out = []
    prefix_cache = {(): identity()}
    for word in reduced_words(system.rank, depth):
        prefix_letters = word.letters[:-1]
        if prefix_letters not in prefix_cache:
            shorter = prefix_cache[prefix_letters[:-1]]
            i, e = prefix_letters[-1]
            prefix_cache[prefix_letters] = shorter @ system.letter(i, e)
        prefix = prefix_cache[prefix_letters]
        i, e = word.letters[-1]
        cloud = clouds[(i, e)] @ prefix.as_float().T
        cloud = cloud / np.linalg.norm(cloud, axis=1, keepdims=True)
        diam = float(round_distance_reps(cloud, cloud).max())
        out.append(WordImage(word=word, diameter=diam, region_index=i,
                             region_sign=e))
    return out


# ---------------------------------------------------------------------------
# fundamental domain coverage
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DomainReport:
    f_fraction: float
    cover_fractions: dict      # word depth -> fraction of probes covered
    probes: int

    def to_jsonable(self):
        return {"f_fraction": self.f_fraction,
                "cover_fractions": {str(k): v for k, v in
                                    sorted(self.cover_fractions.items())},
                "probes": self.probes}


def fundamental_domain_report(system: SchottkySystem, grid: int = 16,
                              depth: int = 4) -> DomainReport:
    """Probe fractions for F (complement of all regions) and its translates."""
    reps = param_grid(grid, 2 * grid, grid)

    def in_f(rows):
        mask = np.ones(rows.shape[0], dtype=bool)
        for minus, plus in system.regions:
            for region in (minus, plus):
                inside, ambiguous = region.classify(rows)
                mask &= ~inside & ~ambiguous
        return mask

    base = in_f(reps)
    covered = base.copy()
    fractions = {0: float(base.mean())}
    words = reduced_words(system.rank, depth)
    mats = {(): identity()}
    for w in words:
        if w.letters not in mats:
            i, e = w.letters[-1]
            mats[w.letters] = mats[w.letters[:-1]] @ system.letter(i, e)
        g_inv = mats[w.letters].inv().as_float()
        covered |= in_f(reps @ g_inv.T)
        if len(w.letters) not in fractions or True:
            fractions[len(w.letters)] = float(covered.mean())
    return DomainReport(f_fraction=float(base.mean()),
                        cover_fractions=fractions,
                        probes=int(reps.shape[0]))