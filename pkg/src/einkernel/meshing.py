"""Surface sampling, welding, and mesh export.

A crooked surface is meshed as a one-parameter family of closed curves: the
slice at circle-parameter t consists of two stem arcs on a great circle and
one half-circle per wing, joined end to end.  Rings at t = 0 and t = pi are
the same projective circle (antipodal lifts), so welding vertices by their
canonical projective representative closes the mesh into the Klein bottle
without any explicit gluing table; the same welding collapses the degenerate
arcs (the stem at the poles, the wings at the pinch slice t = pi/2).

Exports: Wavefront OBJ in the solid-cylinder figure model (one group per part
label, scaffolding photons as line elements) and JSON with raw homogeneous
coordinates.  Both are byte-deterministic for fixed inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .crooked import Extension
from .einstein import (CrookedSurface, EinPoint, cylinder_coords,
                       normalize_rep, point)
from .forms import form21, form32, null_frame
from .group import Iso32, identity, lift_linear, lift_translation
from .exceptions import ResolutionTooSmall

STEM = "stem"
WING_PLUS = "wing_plus"
WING_MINUS = "wing_minus"
SCAFFOLD = "scaffold"


@dataclass
class SurfaceMesh:
    """Welded triangle mesh with per-face part labels and scaffold polylines."""

    vertices: np.ndarray          # (V, 5) canonical homogeneous representatives
    faces: np.ndarray             # (F, 3) vertex indices
    face_labels: list             # length F, entries in {stem, wing_plus, wing_minus}
    lines: list = field(default_factory=list)   # (label, [vertex indices]) polylines
    meta: dict = field(default_factory=dict)

    @property
    def points(self):
        return [EinPoint(v) for v in self.vertices]


def director_rotation(u) -> np.ndarray:
    """Element of the identity component of SO(2,1) taking e1 to u/|u|."""
    u = np.asarray(u, dtype=float)
    q = float(form21(u, u))
    uhat = u / np.sqrt(q)
    frame = null_frame(uhat)
    cross = -2.0 * float(form21(frame.x_minus, frame.x_plus))
    col2 = (np.asarray(frame.x_minus) - np.asarray(frame.x_plus)) / np.sqrt(cross)
    col3 = (np.asarray(frame.x_minus) + np.asarray(frame.x_plus)) / np.sqrt(cross)
    return np.column_stack([uhat, col2, col3])


def surface_transform(surface: CrookedSurface) -> Iso32:
    """Matrix carrying the standard compactified plane onto the surface."""
    m = surface.motion @ lift_translation(np.asarray(surface.vertex, dtype=float))
    if surface.extension is Extension.NEGATIVE:
        m = m @ lift_linear(-np.eye(3))
    return m @ lift_linear(director_rotation(surface.director))


# ---------------------------------------------------------------------------
# standard rings
# ---------------------------------------------------------------------------

def _stem_arc(beta, t):
    z = np.zeros_like(beta)
    return np.stack([np.cos(beta), z, np.sin(beta),
                     np.full_like(beta, np.sin(t)), np.full_like(beta, np.cos(t))],
                    axis=-1)


def _wing_arc(tau, s, mirror):
    ss, cs = np.sin(s), np.cos(s)
    sgn = -1.0 if mirror else 1.0
    return np.stack([ss * np.cos(tau), sgn * ss * np.sin(tau),
                     np.full_like(tau, sgn * cs), np.full_like(tau, cs),
                     np.full_like(tau, -ss)], axis=-1)


def _ring(t, n_s, n_w):
    """One closed slice curve; returns (points (N,5), segment labels (N-1,))."""
    tt = min(t, np.pi - t)
    s = t - np.pi / 2.0
    north = _stem_arc(np.linspace(-tt, tt, n_s + 1), t)
    south = _stem_arc(np.linspace(np.pi - tt, np.pi + tt, n_s + 1), t)
    tau = np.linspace(0.0, np.pi, n_w + 1)
    if t <= np.pi / 2.0:
        wing1 = _wing_arc(tau[::-1], s, mirror=False)
        wing2 = _wing_arc(tau, s, mirror=True)
    else:
        wing1 = _wing_arc(tau, s, mirror=False)
        wing2 = _wing_arc(tau[::-1], s, mirror=True)
    pts = np.concatenate([north, wing1, south, wing2], axis=0)
    labels = ([STEM] * n_s + [None] + [WING_MINUS] * n_w + [None]
              + [STEM] * n_s + [None] + [WING_PLUS] * n_w)
    return pts, labels


def weld(vertices, faces, face_labels, tol=1e-9):
    """Merge coincident projective vertices and clean up faces.

    Representatives are canonicalized first, so antipodal lifts merge; the
    kd-tree pairing at radius ``tol`` is far below any genuine mesh spacing.
    Degenerate (collapsed) triangles are dropped and duplicates removed.
    """
    verts = np.array([normalize_rep(v) for v in vertices])
    tree = cKDTree(verts)
    parent = np.arange(len(verts))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in tree.query_pairs(tol):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    root = np.array([find(i) for i in range(len(verts))])
    new_index = {}
    order = []
    for r in root:
        if r not in new_index:
            new_index[r] = len(order)
            order.append(r)
    vmap = np.array([new_index[r] for r in root])

    out_faces, out_labels, seen = [], [], set()
    for (a, b, c), lab in zip(faces, face_labels):
        fa, fb, fc = vmap[a], vmap[b], vmap[c]
        if fa == fb or fb == fc or fa == fc:
            continue
        key = frozenset((fa, fb, fc))
        if key in seen:
            continue
        seen.add(key)
        out_faces.append((fa, fb, fc))
        out_labels.append(lab)
    return verts[order], np.array(out_faces, dtype=int), out_labels, vmap


def sample_surface(surface: CrookedSurface, n: int) -> SurfaceMesh:
    """Triangulated mesh of a crooked surface at ring resolution ``n``.

    ``n`` rings sweep t through [0, pi] (forced even so the pinch slice
    t = pi/2 is a ring); each ring carries two stem arcs and two wing arcs.
    After welding, the mesh is a closed surface of Euler characteristic 0.
    """
    if n < 4:
        raise ResolutionTooSmall("need resolution >= 4")
    m = n if n % 2 == 0 else n + 1
    n_s = max(2, n // 2)
    n_w = max(2, n // 2)
    rings = []
    seg_labels = None
    for j in range(m + 1):
        pts, seg_labels = _ring(np.pi * j / m, n_s, n_w)
        rings.append(pts)
    ring_len = rings[0].shape[0]

    transform = surface_transform(surface).as_float()
    raw = np.concatenate(rings, axis=0) @ transform.T

    faces, labels = [], []
    for j in range(m):
        base_a = j * ring_len
        base_b = (j + 1) * ring_len
        for k in range(ring_len - 1):
            lab = seg_labels[k]
            if lab is None:  # junction between consecutive arcs, zero width
                lab = seg_labels[k - 1] if k > 0 else STEM
            a, b = base_a + k, base_a + k + 1
            c, d = base_b + k + 1, base_b + k
            faces.append((a, b, c))
            labels.append(lab)
            faces.append((a, c, d))
            labels.append(lab)

    verts, out_faces, out_labels, vmap = weld(raw, faces, labels)

    mesh = SurfaceMesh(vertices=verts, faces=out_faces, face_labels=out_labels,
                       meta={"resolution": n, "rings": m,
                             "kind": "crooked-surface"})

    # scaffolding photons as closed polylines in their own vertex block
    scaffold = surface.scaffolding()
    n_circ = 4 * max(n_s, n_w)
    for name in ("phi_inf", "psi_inf", "phi_p", "psi_p"):
        ph = scaffold[name]
        pts = np.array([np.asarray(p.rep, dtype=float) for p in ph.sample(n_circ)])
        start = mesh.vertices.shape[0]
        mesh.vertices = np.concatenate([mesh.vertices, pts], axis=0)
        mesh.lines.append((SCAFFOLD, list(range(start, start + n_circ))))
    return mesh


# ---------------------------------------------------------------------------
# lightcones and circles
# ---------------------------------------------------------------------------

def lightcone_mesh(p: EinPoint, n: int = 32) -> SurfaceMesh:
    """Mesh of the lightcone at p (a pinched torus of photons).

    Photons through p are parametrized by the null direction angle; each
    photon circle is swept projectively and welded (all photons share p).
    """
    if n < 4:
        raise ResolutionTooSmall("need resolution >= 4")
    from .einstein import P0, PINF, incident, same_point, transport_pair

    anchor = None
    for cand in (P0, PINF, point(0, 1, 0, 0, 1), point(0, 0, 1, 1, 0)):
        if not same_point(cand, p) and not incident(cand, p):
            anchor = cand
            break
    g = transport_pair(p, anchor)  # carries p_inf to p

    alphas = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    sigmas = np.linspace(0.0, np.pi, n, endpoint=False)
    base = np.asarray(PINF.rep, dtype=float)
    verts, faces, labels = [], [], []
    for a in alphas:
        d = np.array([0.0, np.cos(a), np.sin(a), 1.0, 0.0])  # ideal null direction
        for s in sigmas:
            verts.append(np.cos(s) * base + np.sin(s) * d)
    idx = lambda i, j: i * n + j
    for i in range(n):
        for j in range(n):
            a, b = idx(i, j), idx(i, (j + 1) % n)
            c, d_ = idx((i + 1) % n, (j + 1) % n), idx((i + 1) % n, j)
            faces.append((a, b, c))
            faces.append((a, c, d_))
            labels.extend(["cone", "cone"])
    gm = g.as_float()
    raw = np.array(verts) @ gm.T
    v, f, lab, _ = weld(raw, faces, labels)
    return SurfaceMesh(vertices=v, faces=f, face_labels=lab,
                       meta={"resolution": n, "kind": "lightcone"})


def circle_polyline(p: EinPoint, q: EinPoint, n: int = 128) -> np.ndarray:
    """Sampled spacelike circle where two lightcones intersect; (n, 5)."""
    from .einstein import lightcone_intersection
    curve = lightcone_intersection(p, q)
    ts = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    return np.array([np.asarray(curve(float(t)).rep, dtype=float) for t in ts])


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def mesh_to_obj(mesh: SurfaceMesh) -> str:
    """Wavefront OBJ in the solid-cylinder figure model.

    Vertices map through ``cylinder_coords``; faces touching the removed
    circle are skipped (that is the visual cut through the stem seen in the
    figures).  Faces are grouped by part label, scaffolding photons are
    emitted as line elements.
    """
    out = ["# einkernel surface export", "o surface"]
    coords = []
    for v in mesh.vertices:
        coords.append(cylinder_coords(EinPoint(v)))
    for c in coords:
        if c is None:
            out.append("v 0 0 -1")  # placeholder; never referenced
        else:
            out.append(f"v {_fmt(c[0])} {_fmt(c[1])} {_fmt(c[2])}")
    by_label = {}
    for (a, b, c), lab in zip(mesh.faces, mesh.face_labels):
        if coords[a] is None or coords[b] is None or coords[c] is None:
            continue
        by_label.setdefault(lab, []).append((a, b, c))
    for lab in sorted(by_label):
        out.append(f"g {lab}")
        for a, b, c in by_label[lab]:
            out.append(f"f {a + 1} {b + 1} {c + 1}")
    scaffold_lines = [entry for entry in mesh.lines]
    if scaffold_lines:
        out.append(f"g {SCAFFOLD}")
        for _, indices in scaffold_lines:
            usable = [i + 1 for i in indices if coords[i] is not None]
            if len(usable) >= 2:
                out.append("l " + " ".join(str(i) for i in usable))
    return "\n".join(out) + "\n"


def mesh_to_json(mesh: SurfaceMesh) -> dict:
    """Raw homogeneous coordinates with 17-significant-digit formatting."""
    return {
        "vertices": [[_fmt(x) for x in v] for v in mesh.vertices],
        "faces": [[int(i) for i in f] for f in mesh.faces],
        "face_labels": list(mesh.face_labels),
        "lines": [{"label": lab, "indices": [int(i) for i in idx]}
                  for lab, idx in mesh.lines],
        "meta": dict(mesh.meta),
    }
