"""Numerical and exact certification of surface configurations.

Floating-point side: round-metric separation margins between sampled crooked
surfaces, component counting on a parameter grid, spacelike-circle and mesh
topology checks.  Exact side: a crooked surface with rational data decomposes
into three closed pieces (stem and two wing half-cones), each of the form

    { X in R^5 :  c.X = 0,  <X,X> = 0,  M X >= 0  (up to overall sign) },

with rational ``c`` and ``M``; pairwise disjointness of two surfaces then
reduces to deciding, for each piece pair, whether a rational quadratic form
has a zero on a rational polyhedral cone.  That decision is made exactly by
computing the min and max of the form on a compact polytope cross-section
through KKT face enumeration over the rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.spatial import cKDTree

from . import tolerances
from .crooked import CrookedPlane, Extension, wing_seeds
from .exact import ZERO, fmat, frac, fvec, nullspace, rref
from .einstein import (CrookedSurface, EinPoint, incident,
                       lightcone_intersection, param_chart_rep)
from .forms import CausalClass, causal_class, form21, form32, null_frame
from .group import Iso32
from .meshing import SurfaceMesh, sample_surface, surface_transform
from .exceptions import IncidentPoints, UngluedMesh


# ---------------------------------------------------------------------------
# round metric
# ---------------------------------------------------------------------------

def round_distance(p: EinPoint, q: EinPoint) -> float:
    """Angle metric on the projectivized sphere (range [0, pi/2])."""
    a = np.asarray(p.rep, dtype=float)
    b = np.asarray(q.rep, dtype=float)
    dot = abs(float(a @ b)) / (np.linalg.norm(a) * np.linalg.norm(b))
    return float(np.arccos(np.clip(dot, -1.0, 1.0)))


def round_distance_reps(a, b) -> np.ndarray:
    """Vectorized round distance between rows of unit representatives."""
    dots = np.clip(np.abs(np.asarray(a) @ np.asarray(b).T), 0.0, 1.0)
    return np.arccos(dots)


def _unit_rows(rows):
    rows = np.asarray(rows, dtype=float)
    return rows / np.linalg.norm(rows, axis=1, keepdims=True)


def _mesh_cloud(mesh: SurfaceMesh) -> np.ndarray:
    return _unit_rows(mesh.vertices)


def _max_edge_angle(mesh: SurfaceMesh) -> float:
    v = _unit_rows(mesh.vertices)
    worst = 0.0
    for f in mesh.faces:
        for i, j in ((0, 1), (1, 2), (0, 2)):
            d = abs(float(v[f[i]] @ v[f[j]]))
            worst = max(worst, float(np.arccos(np.clip(d, -1.0, 1.0))))
    return worst


# ---------------------------------------------------------------------------
# separation margins
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeparationReport:
    margin: float
    resolution: int
    refinement_ratio: float
    certified_disjoint: bool
    grid_diameter: float

    def to_jsonable(self):
        return {"margin": self.margin, "resolution": self.resolution,
                "refinement_ratio": self.refinement_ratio,
                "certified_disjoint": self.certified_disjoint,
                "grid_diameter": self.grid_diameter}


def _nearest_to(cloud, ref):
    """Per-row nearest round angle (and index) from cloud rows to ref rows.

    Blocked dense |dot| maximization: the projective angle ignores signs, so
    no antipodal doubling is needed, and the GEMM blocks keep memory flat.
    """
    n1, n2 = cloud.shape[0], ref.shape[0]
    best = np.zeros(n1)
    arg = np.zeros(n1, dtype=int)
    chunk = max(1, (1 << 22) // max(1, n2))
    for i0 in range(0, n1, chunk):
        block = np.abs(cloud[i0:i0 + chunk] @ ref.T)
        j = np.argmax(block, axis=1)
        rows = np.arange(block.shape[0])
        best[i0:i0 + chunk] = block[rows, j]
        arg[i0:i0 + chunk] = j
    return np.arccos(np.clip(best, 0.0, 1.0)), arg


def _nearest_pairs(cloud1, cloud2, k=16):
    """k best (angle, i, j) pairs between two unit clouds."""
    ang, arg = _nearest_to(cloud1, cloud2)
    order = np.argsort(ang)[:k]
    return [(float(ang[i]), int(i), int(arg[i])) for i in order]


def _patch_stem_north(f, t):
    tt = np.minimum(t, np.pi - t)
    beta = -tt + 2.0 * tt * f
    z = np.zeros_like(beta)
    return np.stack([np.cos(beta), z, np.sin(beta), np.sin(t), np.cos(t)], axis=-1)


def _patch_stem_south(f, t):
    tt = np.minimum(t, np.pi - t)
    beta = (np.pi - tt) + 2.0 * tt * f
    z = np.zeros_like(beta)
    return np.stack([np.cos(beta), z, np.sin(beta), np.sin(t), np.cos(t)], axis=-1)


def _patch_wing(mirror):
    sgn = -1.0 if mirror else 1.0

    def chart(f, t):
        s = t - np.pi / 2.0
        tau = np.pi * f
        return np.stack([np.sin(s) * np.cos(tau), sgn * np.sin(s) * np.sin(tau),
                         sgn * np.cos(s), np.cos(s), -np.sin(s)], axis=-1)

    return chart


_CLOUD_PATCHES = (_patch_stem_north, _patch_stem_south,
                  _patch_wing(False), _patch_wing(True))


def surface_cloud(surface: CrookedSurface, resolution: int, max_gap: float,
                  max_depth: int = 26, max_points: int = 2_000_000):
    """Unit-vector sample cloud with cell diameters at most ``max_gap``.

    The standard surface is covered by four closed parameter patches (two
    stem arc sheets, two wing half-cones; scaffolding photons are patch
    boundaries).  Each patch is refined level-synchronously with anisotropic
    binary splits (always along the longer image edge), so strongly sheared
    motions cost linearly rather than quadratically in the stretch.  Returns
    ``(cloud, achieved_gap)``; the gap exceeds ``max_gap`` only if a depth or
    size guard triggered.
    """
    transform = surface_transform(surface).as_float()

    points = []
    achieved = max_gap
    base = max(8, resolution // 4)
    total = 0

    def angles(a, b):
        dots = np.abs(np.einsum("nk,nk->n", a, b))
        return np.arccos(np.clip(dots, 0.0, 1.0))

    for patch in _CLOUD_PATCHES:
        fi, ti = np.meshgrid(np.arange(base), np.arange(base), indexing="ij")
        step = 1.0 / base
        cells = np.column_stack([fi.ravel() * step, ti.ravel() * step,
                                 np.full(base * base, step),
                                 np.full(base * base, step)])
        depth = 0
        while cells.shape[0]:
            f0, t0 = cells[:, 0], np.pi * cells[:, 1]
            f1 = cells[:, 0] + cells[:, 2]
            t1 = np.pi * (cells[:, 1] + cells[:, 3])
            corners = np.stack([patch(f0, t0), patch(f1, t0),
                                patch(f0, t1), patch(f1, t1)], axis=1)
            corners = corners @ transform.T
            corners /= np.linalg.norm(corners, axis=2, keepdims=True)
            ef = np.maximum(angles(corners[:, 0], corners[:, 1]),
                            angles(corners[:, 2], corners[:, 3]))
            et = np.maximum(angles(corners[:, 0], corners[:, 2]),
                            angles(corners[:, 1], corners[:, 3]))
            diam = np.maximum(np.maximum(ef, et),
                              np.maximum(angles(corners[:, 0], corners[:, 3]),
                                         angles(corners[:, 1], corners[:, 2])))
            guard = depth >= max_depth or total > max_points
            done = (diam <= max_gap) | guard
            emit = corners[done].reshape(-1, 5)
            points.append(emit)
            total += emit.shape[0]
            if guard and np.any(done & (diam > max_gap)):
                achieved = max(achieved, float(diam[done].max()))
            rest = cells[~done]
            split_f = ef[~done] >= et[~done]
            a = rest.copy()
            b = rest.copy()
            a[split_f, 2] *= 0.5
            b[split_f, 2] *= 0.5
            b[split_f, 0] += a[split_f, 2]
            a[~split_f, 3] *= 0.5
            b[~split_f, 3] *= 0.5
            b[~split_f, 1] += a[~split_f, 3]
            cells = np.concatenate([a, b], axis=0)
            depth += 1
    cloud = np.concatenate(points, axis=0)
    cloud = np.unique(cloud.round(9), axis=0)
    return cloud, achieved


def _bisect_to_locus(v, w, surface, band=None, iters=60):
    """Shrink the arc v -> w (w on the surface) down to the membership locus.

    Returns the angle from v to the first point on the arc that satisfies the
    surface membership predicate; a refinement of the vertex-to-vertex angle
    in the direction of the true locus distance.
    """
    from .einstein import in_crooked_surface, project_null
    v = v / np.linalg.norm(v)
    w = w / np.linalg.norm(w)
    if float(v @ w) < 0:
        w = -w
    lo, hi = 0.0, 1.0  # fraction of the chord toward w
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        try:
            q = project_null((1.0 - mid) * v + mid * w)
        except ValueError:
            break
        if in_crooked_surface(EinPoint(q / np.linalg.norm(q)), surface, band):
            hi = mid
        else:
            lo = mid
    q = project_null((1.0 - hi) * v + hi * w)
    q = q / np.linalg.norm(q)
    return float(np.arccos(np.clip(abs(v @ q), 0, 1)))


def _one_sided_margin(cloud_a, surf_b, cloud_b, k=12):
    pairs = _nearest_pairs(cloud_a, cloud_b, k=k)
    best = pairs[0][0]
    if best <= 1e-12:
        return best
    refined = best
    for ang, i, j in pairs:
        refined = min(refined, _bisect_to_locus(cloud_a[i], cloud_b[j], surf_b))
    return refined


def separation_margin(s1: CrookedSurface, s2: CrookedSurface,
                      resolution: int = 64) -> SeparationReport:
    """Symmetrized sampled separation between two crooked surfaces.

    Samples both surfaces as adaptively densified clouds, takes the minimum
    round distance from each cloud to the other surface's membership locus
    (nearest-vertex pairs refined by bisection along the joining arcs), then
    doubles the resolution once for the stability ratio.
    ``certified_disjoint`` requires the margin to beat three times the
    achieved sampling gap at the base resolution.
    """
    def margin_at(res):
        gap = 2.0 * np.pi / res
        c1, g1 = surface_cloud(s1, res, gap)
        c2, g2 = surface_cloud(s2, res, gap)
        est = min(_one_sided_margin(c1, s2, c2), _one_sided_margin(c2, s1, c1))
        # second pass: sample finely enough for the margin to be certifiable,
        # pruning the fine clouds to the near-approach region seen coarsely
        target = min(gap, est / 4.0)
        if est > 1e-12 and target < gap:
            c1f, g1 = surface_cloud(s1, res, target)
            c2f, g2 = surface_cloud(s2, res, target)
            cutoff = est + g1 + g2 + max(g1, g2)
            keep1 = _nearest_to(c1f, c2)[0] <= cutoff
            keep2 = _nearest_to(c2f, c1)[0] <= cutoff
            c1p = c1f[keep1] if keep1.any() else c1f
            c2p = c2f[keep2] if keep2.any() else c2f
            est = min(est,
                      _one_sided_margin(c1p, s2, c2p),
                      _one_sided_margin(c2p, s1, c1p))
        return est, max(g1, g2)

    margin, diam = margin_at(resolution)
    margin2, _ = margin_at(2 * resolution)
    ratio = margin2 / margin if margin > 1e-12 else 1.0
    return SeparationReport(margin=margin, resolution=resolution,
                            refinement_ratio=float(ratio),
                            certified_disjoint=bool(margin > 3.0 * diam),
                            grid_diameter=float(diam))


# ---------------------------------------------------------------------------
# component counting on the parameter grid
# ---------------------------------------------------------------------------

@dataclass
class ComponentReport:
    count: int
    labels: np.ndarray          # component id per node, -1 for removed
    grid_points: np.ndarray     # (N, 5) representatives
    shape: tuple

    def to_jsonable(self):
        return {"count": int(self.count), "grid": list(self.shape)}


def component_report(surfaces, grid: int = 24, band_factor: float = 2.0,
                     mesh_resolution: int = None) -> ComponentReport:
    """Connected components of the complement of one or more surfaces.

    The parameter grid covers the whole space once (theta wraps, the top
    t-slice glues antipodally onto the bottom one, poles collapse); nodes
    within a band of any surface's sample cloud are removed.
    """
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    if isinstance(surfaces, CrookedSurface):
        surfaces = [surfaces]
    if grid < 16:
        raise ValueError("need at least 16 grid nodes per axis")
    n_phi = grid + 1
    n_theta = 2 * grid
    n_t = grid

    phi = np.linspace(0.0, np.pi, n_phi)
    theta = np.linspace(0.0, 2 * np.pi, n_theta, endpoint=False)
    t = np.linspace(0.0, np.pi, n_t, endpoint=False)
    pp, qq, ss = np.meshgrid(phi, theta, t, indexing="ij")
    pts = param_chart_rep(pp.ravel(), qq.ravel(), ss.ravel())
    pts_unit = _unit_rows(pts)

    # canonical node ids: poles collapse over theta
    raw_id = (np.arange(n_phi)[:, None, None] * n_theta
              + np.arange(n_theta)[None, :, None]) * n_t + np.arange(n_t)[None, None, :]
    canon = raw_id.copy()
    canon[0] = raw_id[0, 0][None, :]
    canon[-1] = raw_id[-1, 0][None, :]
    canon = canon.reshape(-1)

    step = max(np.pi / grid, np.pi / n_t)
    if mesh_resolution is None:
        mesh_resolution = max(32, grid)
    blocked = np.zeros(pts.shape[0], dtype=bool)
    mesh_step = 0.0
    for s in surfaces:
        mesh = sample_surface(s, mesh_resolution)
        cloud = _mesh_cloud(mesh)
        mesh_step = max(mesh_step, _max_edge_angle(mesh))
        tree = cKDTree(np.concatenate([cloud, -cloud], axis=0))
        band = band_factor * max(step, mesh_step)
        chord = 2.0 * np.sin(min(band, np.pi / 2) / 2.0)
        hits = tree.query_ball_point(pts_unit, r=chord, return_length=True)
        blocked |= hits > 0

    def node(i, j, k):
        return canon[(i * n_theta + j) * n_t + k]

    edges = []
    idx = np.arange(n_phi * n_theta * n_t).reshape(n_phi, n_theta, n_t)
    # phi-direction
    edges.append(np.column_stack([idx[:-1].ravel(), idx[1:].ravel()]))
    # theta-direction with wrap
    edges.append(np.column_stack([idx.ravel(),
                                  np.roll(idx, -1, axis=1).ravel()]))
    # t-direction interior
    edges.append(np.column_stack([idx[:, :, :-1].ravel(), idx[:, :, 1:].ravel()]))
    # t-boundary: (phi, theta, last) ~ antipodal (pi - phi, theta + pi, 0)
    ii, jj = np.meshgrid(np.arange(n_phi), np.arange(n_theta), indexing="ij")
    src = idx[ii, jj, n_t - 1].ravel()
    dst = idx[n_phi - 1 - ii, (jj + n_theta // 2) % n_theta, 0].ravel()
    edges.append(np.column_stack([src, dst]))
    edges = np.concatenate(edges, axis=0)
    edges = canon[edges]
    keep = ~blocked[edges[:, 0]] & ~blocked[edges[:, 1]]
    edges = edges[keep]

    n_nodes = n_phi * n_theta * n_t
    graph = coo_matrix((np.ones(edges.shape[0]), (edges[:, 0], edges[:, 1])),
                       shape=(n_nodes, n_nodes))
    _, raw_labels = connected_components(graph, directed=False)
    raw_labels = raw_labels[canon]
    raw_labels[blocked] = -1

    # count components among canonical unblocked nodes only
    is_canon = canon == np.arange(n_nodes)
    live = np.unique(raw_labels[is_canon & ~blocked])
    remap = {old: new for new, old in enumerate(sorted(live))}
    labels = np.array([remap.get(l, -1) if l >= 0 else -1 for l in raw_labels])
    return ComponentReport(count=len(live), labels=labels, grid_points=pts,
                           shape=(n_phi, n_theta, n_t))


def component_count(surfaces, grid: int = 24) -> int:
    return component_report(surfaces, grid).count


# ---------------------------------------------------------------------------
# spacelike circles and mesh topology
# ---------------------------------------------------------------------------

def spacelike_circle_check(p: EinPoint, q: EinPoint, samples: int = 256) -> bool:
    """Finite-difference tangents along the intersection circle are spacelike."""
    if incident(p, q):
        raise IncidentPoints("lightcones of incident points share a photon")
    curve = lightcone_intersection(p, q)
    g = curve.transport
    ts = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    h = 1e-5
    raw = lambda t: g.apply_vec(np.array([0.0, np.cos(t), np.sin(t), 1.0, 0.0]))
    for t in ts:
        tangent = (raw(t + h) - raw(t - h)) / (2 * h)
        if causal_class(tangent, 1e-6) is not CausalClass.SPACELIKE:
            return False
    return True


@dataclass(frozen=True)
class TopologyReport:
    euler: int
    orientable: bool
    vertices: int
    edges: int
    faces: int

    def to_jsonable(self):
        return {"euler": self.euler, "orientable": self.orientable,
                "vertices": self.vertices, "edges": self.edges,
                "faces": self.faces}


def mesh_topology_check(mesh: SurfaceMesh) -> TopologyReport:
    """Euler characteristic and orientability of a glued mesh.

    Raises ``UngluedMesh`` when boundary or non-manifold edges remain, since
    neither invariant is meaningful then.
    """
    faces = np.asarray(mesh.faces)
    edge_faces = {}
    for fi, f in enumerate(faces):
        for k in range(3):
            e = (int(f[k]), int(f[(k + 1) % 3]))
            edge_faces.setdefault(tuple(sorted(e)), []).append((fi, e))
    counts = np.array([len(v) for v in edge_faces.values()])
    if np.any(counts == 1):
        raise UngluedMesh(f"{int((counts == 1).sum())} boundary edges remain")
    if np.any(counts > 2):
        raise UngluedMesh(f"{int((counts > 2).sum())} non-manifold edges")

    used = np.unique(faces)
    v_count, e_count, f_count = len(used), len(edge_faces), len(faces)

    orientation = {}
    orientable = True
    for start in range(f_count):
        if start in orientation:
            continue
        orientation[start] = 1
        stack = [start]
        while stack:
            fi = stack.pop()
            f = faces[fi]
            for k in range(3):
                e = (int(f[k]), int(f[(k + 1) % 3]))
                for fj, ej in edge_faces[tuple(sorted(e))]:
                    if fj == fi:
                        continue
                    needed = -orientation[fi] if ej == e else orientation[fi]
                    if fj in orientation:
                        if orientation[fj] != needed:
                            orientable = False
                    else:
                        orientation[fj] = needed
                        stack.append(fj)
    return TopologyReport(euler=int(v_count - e_count + f_count),
                          orientable=bool(orientable),
                          vertices=int(v_count), edges=int(e_count),
                          faces=int(f_count))


# ---------------------------------------------------------------------------
# exact-rational piece decomposition
# ---------------------------------------------------------------------------

J32_EXACT = fmat([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0],
                  [0, 0, 0, -1, 0], [0, 0, 0, 0, -1]])


@dataclass(frozen=True)
class ExactPiece:
    """Closed surface piece: ker(c) on the null quadric, cone rows M (up to sign)."""

    label: str
    covector: np.ndarray   # (5,) Fractions
    rows: np.ndarray       # (k, 5) Fractions


def _f_cov(v):
    """Covector X -> X2*v1 + X3*v2 - X4*v3 as a length-5 row."""
    return fvec(0, v[0], v[1], -v[2], 0)


_S_ROW = fvec(1, 0, 0, 0, 1)


def exact_surface_pieces(vertex, director, extension=Extension.POSITIVE):
    """The three closed pieces of conf(CP(vertex, director, extension)).

    Requires exact rational data with a rational null frame.  The projective
    union of the pieces is exactly the compactified surface; each piece keeps
    its part label for reporting.
    """
    p = fvec(*vertex)
    u = fvec(*director)
    frame = null_frame(u)
    pu = form21(p, u)
    pp = form21(p, p)
    ell = fvec(-1, -2 * p[0], -2 * p[1], 2 * p[2], 1) + pp * _S_ROW
    pieces = [ExactPiece(label="stem",
                         covector=_f_cov(u) - pu * _S_ROW,
                         rows=np.stack([_S_ROW, -ell]))]
    seed_plus, seed_minus = wing_seeds(u, extension)
    for name, x, seed in (("wing_plus", frame.x_plus, seed_plus),
                          ("wing_minus", frame.x_minus, seed_minus)):
        px = form21(p, x)
        psig = form21(p, seed)
        pieces.append(ExactPiece(
            label=name,
            covector=_f_cov(x) - px * _S_ROW,
            rows=np.stack([_S_ROW, _f_cov(seed) - psig * _S_ROW])))
    return pieces


def transform_pieces(pieces, g: Iso32):
    """Pieces of g . surface: every functional composes with g^{-1}."""
    if not g.exact:
        raise ValueError("exact pieces need an exact group element")
    ginv = np.asarray(g.inv().m)
    out = []
    for p in pieces:
        out.append(ExactPiece(label=p.label,
                              covector=p.covector @ ginv,
                              rows=p.rows @ ginv))
    return out


# ---------------------------------------------------------------------------
# exact decision: does a quadratic form vanish on a polyhedral cone?
# ---------------------------------------------------------------------------

def _solve_any(mat, rhs):
    """A particular exact solution of mat x = rhs, or None if inconsistent."""
    mat = np.asarray(mat, dtype=object)
    rhs = np.asarray(rhs, dtype=object).reshape(-1, 1)
    n = mat.shape[1]
    aug = np.concatenate([mat, rhs], axis=1)
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = np.array([ZERO] * n, dtype=object)
    for r, c in enumerate(pivots):
        x[c] = red[r, n]
    return x


def _quad_range_on_polytope(gram, rows, ell):
    """Exact (min, max) of c^T G c over {rows . c >= 0, ell . c = 1}.

    KKT face enumeration: for every active subset the stationary system is
    solved exactly; feasible candidates are collected.  Returns None when the
    polytope is empty.
    """
    k = gram.shape[0]
    m = rows.shape[0]
    values = []
    for subset in itertools.chain.from_iterable(
            itertools.combinations(range(m), r) for r in range(m + 1)):
        n_act = len(subset)
        size = k + n_act + 1
        mat = np.array([[ZERO] * size for _ in range(size)], dtype=object)
        rhs = np.array([ZERO] * size, dtype=object)
        # stationarity: 2 G c - rows_S^T lam - ell^T mu = 0
        for i in range(k):
            for j in range(k):
                mat[i][j] = 2 * gram[i][j]
            for a, s in enumerate(subset):
                mat[i][k + a] = -rows[s][i]
            mat[i][k + n_act] = -ell[i]
        for a, s in enumerate(subset):
            for j in range(k):
                mat[k + a][j] = rows[s][j]
        for j in range(k):
            mat[k + n_act][j] = ell[j]
        rhs[k + n_act] = Fraction(1)
        sol = _solve_any(mat, rhs)
        if sol is None:
            continue
        c = sol[:k]
        if any((rows[r] @ c) < 0 for r in range(m)):
            continue
        values.append(c @ gram @ c)
    if not values:
        return None
    return min(values), max(values)


def cone_quadric_meets(gram, rows) -> bool:
    """Exact: does {M c >= 0} minus the origin meet {c^T G c = 0}?

    Splits off lineality until the cone is pointed, cross-sections it with
    the strictly positive functional ``sum of rows`` into a compact polytope,
    and checks whether 0 lies between the exact min and max of the form.
    """
    rows = np.asarray(rows, dtype=object)
    gram = np.asarray(gram, dtype=object)
    lin = nullspace(rows)
    if lin:
        v = lin[0]
        return (cone_quadric_meets(gram, np.concatenate([rows, v.reshape(1, -1)]))
                or cone_quadric_meets(gram, np.concatenate([rows, -v.reshape(1, -1)])))
    ell = rows.sum(axis=0)
    rng = _quad_range_on_polytope(gram, rows, ell)
    if rng is None:
        return False
    lo, hi = rng
    return lo <= 0 <= hi


def pieces_intersect(piece_a: ExactPiece, piece_b: ExactPiece):
    """Exact emptiness test for a pair of closed surface pieces."""
    stacked = np.stack([piece_a.covector, piece_b.covector])
    basis = nullspace(stacked)
    w = np.stack(basis, axis=1)  # 5 x k
    gram = w.T @ np.asarray(J32_EXACT) @ w
    rows_a = piece_a.rows @ w
    rows_b = piece_b.rows @ w
    for sign in (1, -1):
        rows = np.concatenate([rows_a, sign * rows_b], axis=0)
        if cone_quadric_meets(gram, rows):
            return True
    return False


def exact_surfaces_disjoint(pieces_a, pieces_b):
    """Finite case analysis over piece pairs; returns (disjoint, hits)."""
    hits = []
    for pa in pieces_a:
        for pb in pieces_b:
            if pieces_intersect(pa, pb):
                hits.append((pa.label, pb.label))
    return (len(hits) == 0), hits


# ---------------------------------------------------------------------------
# the negatively-extended example
# ---------------------------------------------------------------------------

def negative_example_surfaces():
    """The worked example: basic surface vs a moved negatively extended one."""
    from .group import identity, mu_example
    s1 = CrookedSurface(identity(), np.zeros(3), np.array([1.0, 0, 0]),
                        Extension.POSITIVE)
    s2 = CrookedSurface(Iso32(np.asarray(mu_example().m, dtype=float)),
                        np.zeros(3), np.array([1.0, 0, 0]), Extension.NEGATIVE)
    return s1, s2


def negative_example_exact_check():
    """Exact-rational disjointness of the worked example; returns (bool, hits)."""
    from .group import mu_example
    pieces1 = exact_surface_pieces(fvec(0, 0, 0), fvec(1, 0, 0),
                                   Extension.POSITIVE)
    pieces2 = exact_surface_pieces(fvec(0, 0, 0), fvec(1, 0, 0),
                                   Extension.NEGATIVE)
    pieces2 = transform_pieces(pieces2, mu_example())
    return exact_surfaces_disjoint(pieces1, pieces2)
