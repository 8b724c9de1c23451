"""Command-line front end: construction, certification, mesh export.

Subcommands reproduce the worked examples end to end::

    einkernel basic-example --resolution 64 --out fig_cp.obj
    einkernel lightcone --point "1:0:0:0:1" --out fig_cone.obj
    einkernel two-cones --p "1:0:0:0:1" --q "-1:0:0:0:1" --out cones.obj
    einkernel disjoint-pair --certify --json
    einkernel schottky --rapidity 1 --depth 6 --json
    einkernel cartan --rapidity 1 --powers 20 --json
    einkernel certify --resolution 32 --json
    einkernel negative-example --certify
    einkernel export-mesh --surface negative --out s2.obj

Exit codes: 0 success, 1 certification failure, 2 usage error.  Homogeneous
points are written in colon notation ("a:b:c:d:e"), affine vectors as comma
triples, rationals as "p/q".  All outputs are byte-deterministic.  An
optional ``--config FILE`` supplies ``key = value`` defaults, and the
``EINKERNEL_EPS_*`` environment variables override tolerance defaults only.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import tolerances
from .crooked import CrookedPlane, Extension
from .einstein import EinPoint, compactify, point
from .group import (cartan_projection, classify_distortion, mu_example, Iso32)
from .meshing import (circle_polyline, lightcone_mesh, mesh_to_json,
                      mesh_to_obj, sample_surface, SurfaceMesh)
from .schottky import (cyclic_schottky, fundamental_domain_report,
                       pingpong_check, pull_apart, standard_cyclic_example,
                       word_images)
from .certify import (component_count, mesh_topology_check,
                      negative_example_exact_check, negative_example_surfaces,
                      separation_margin)


def parse_homogeneous(text: str) -> EinPoint:
    parts = text.split(":")
    if len(parts) != 5:
        raise ValueError(f"expected 5 colon-separated coordinates, got {text!r}")
    return point(*[float(Fraction(p)) for p in parts])


def parse_vec3(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"expected 3 comma-separated coordinates, got {text!r}")
    return np.array([float(Fraction(p)) for p in parts])


def load_config(path: str) -> dict:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, value = line.partition("=")
            if not _:
                raise ValueError(f"bad config line: {line!r}")
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _surface_by_name(name: str):
    s1, s2 = negative_example_surfaces()
    table = {
        "basic": s1,
        "negative": s2,
        "negative-untransformed": compactify(
            CrookedPlane(np.zeros(3), np.array([1.0, 0, 0]), Extension.NEGATIVE)),
    }
    if name in table:
        return table[name]
    raise ValueError(f"unknown surface name {name!r}; "
                     f"choose from {sorted(table)}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_basic_example(args) -> int:
    surface = _surface_by_name("basic")
    mesh = sample_surface(surface, args.resolution)
    if args.out:
        _write(args.out, mesh_to_obj(mesh))
    topo = mesh_topology_check(mesh)
    payload = {"mesh": {"vertices": int(mesh.vertices.shape[0]),
                        "faces": int(mesh.faces.shape[0])},
               "topology": topo.to_jsonable(),
               "out": args.out}
    _emit(args, payload,
          [f"basic example surface: {mesh.faces.shape[0]} faces, "
           f"euler={topo.euler}, orientable={topo.orientable}",
           f"wrote {args.out}" if args.out else "no --out given"])
    return 0


def cmd_lightcone(args) -> int:
    p = parse_homogeneous(args.point)
    mesh = lightcone_mesh(p, args.resolution)
    if args.out:
        _write(args.out, mesh_to_obj(mesh))
    payload = {"point": args.point,
               "mesh": {"vertices": int(mesh.vertices.shape[0]),
                        "faces": int(mesh.faces.shape[0])},
               "out": args.out}
    _emit(args, payload, [f"lightcone mesh: {mesh.faces.shape[0]} faces",
                          f"wrote {args.out}" if args.out else "no --out given"])
    return 0


def cmd_two_cones(args) -> int:
    p = parse_homogeneous(args.p)
    q = parse_homogeneous(args.q)
    mesh_p = lightcone_mesh(p, args.resolution)
    mesh_q = lightcone_mesh(q, args.resolution)
    circle = circle_polyline(p, q, 4 * args.resolution)
    combined = SurfaceMesh(
        vertices=np.concatenate([mesh_p.vertices, mesh_q.vertices, circle]),
        faces=np.concatenate([mesh_p.faces,
                              mesh_q.faces + mesh_p.vertices.shape[0]]),
        face_labels=(["cone_p"] * len(mesh_p.faces)
                     + ["cone_q"] * len(mesh_q.faces)),
        lines=[("circle", list(range(mesh_p.vertices.shape[0]
                                     + mesh_q.vertices.shape[0],
                                     mesh_p.vertices.shape[0]
                                     + mesh_q.vertices.shape[0]
                                     + circle.shape[0])))],
        meta={"kind": "two-cones"})
    if args.out:
        _write(args.out, mesh_to_obj(combined))
    payload = {"faces": int(combined.faces.shape[0]),
               "circle_samples": int(circle.shape[0]), "out": args.out}
    _emit(args, payload, [f"two lightcones and their spacelike circle: "
                          f"{combined.faces.shape[0]} faces",
                          f"wrote {args.out}" if args.out else "no --out given"])
    return 0


def cmd_disjoint_pair(args) -> int:
    _, spec = standard_cyclic_example(args.rapidity)
    s1, s2 = pull_apart(spec)
    report = separation_margin(s1, s2, args.resolution)
    payload = {"separation": report.to_jsonable()}
    ok = report.certified_disjoint
    _emit(args, payload,
          [f"pulled-apart pair: margin={report.margin:.6f} "
           f"ratio={report.refinement_ratio:.3f} certified={ok}"])
    if args.certify and not ok:
        return 1
    return 0


def cmd_schottky(args) -> int:
    g, spec = standard_cyclic_example(args.rapidity)
    system = cyclic_schottky(g, spec)
    pp = pingpong_check(system, probes=args.probes)
    images = word_images(system, args.depth)
    by_depth = {}
    for img in images:
        d = len(img.word)
        by_depth[d] = max(by_depth.get(d, 0.0), img.diameter)
    domain = fundamental_domain_report(system, grid=args.grid,
                                       depth=min(args.depth, 4))
    payload = {"pingpong": pp.to_jsonable(),
               "max_leaf_diameter": {str(k): v for k, v in sorted(by_depth.items())},
               "domain": domain.to_jsonable()}
    lines = [f"ping-pong consistent fraction: {pp.consistent_fraction}"
             f" ({pp.probes_decided} probes decided)",
             "max leaf diameters: " + " ".join(
                 f"{k}:{v:.4f}" for k, v in sorted(by_depth.items())),
             f"F fraction: {domain.f_fraction:.4f}"]
    _emit(args, payload, lines)
    if args.certify and pp.consistent_fraction < 1.0:
        return 1
    return 0


def cmd_cartan(args) -> int:
    g, spec = standard_cyclic_example(args.rapidity)
    system = cyclic_schottky(g, spec)
    eta = system.generators[0]
    pairs = [cartan_projection(eta ** n) for n in range(1, args.powers + 1)]
    cls = classify_distortion(pairs)
    payload = {"exponents": [{"n": n + 1, "lam": p.lam, "mu": p.mu,
                              "delta": p.delta}
                             for n, p in enumerate(pairs)],
               "classification": cls.value}
    lines = [f"n={n + 1}: lam={p.lam:.4f} mu={p.mu:.4f} delta={p.delta:.4f}"
             for n, p in enumerate(pairs)]
    lines.append(f"classification: {cls.value}")
    _emit(args, payload, lines)
    return 0


def cmd_certify(args) -> int:
    s1 = _surface_by_name(args.surface1)
    s2 = _surface_by_name(args.surface2)
    report = separation_margin(s1, s2, args.resolution)
    payload = {"separation": report.to_jsonable()}
    _emit(args, payload,
          [f"margin={report.margin:.6f} ratio={report.refinement_ratio:.3f} "
           f"certified={report.certified_disjoint}"])
    return 0 if report.certified_disjoint else 1


def cmd_negative_example(args) -> int:
    disjoint, hits = negative_example_exact_check()
    payload = {"exact_disjoint": bool(disjoint),
               "piece_pair_hits": [list(h) for h in hits]}
    lines = [f"exact rational disjointness: {disjoint}"]
    if args.resolution:
        s1, s2 = negative_example_surfaces()
        report = separation_margin(s1, s2, args.resolution)
        payload["separation"] = report.to_jsonable()
        lines.append(f"sampled margin={report.margin:.6f} "
                     f"certified={report.certified_disjoint}")
    _emit(args, payload, lines)
    if args.certify and not disjoint:
        return 1
    return 0


def cmd_export_mesh(args) -> int:
    surface = _surface_by_name(args.surface)
    mesh = sample_surface(surface, args.resolution)
    if args.format == "obj":
        _write(args.out, mesh_to_obj(mesh))
    else:
        _write(args.out, json.dumps(mesh_to_json(mesh), indent=1,
                                    sort_keys=True))
    payload = {"out": args.out, "format": args.format,
               "vertices": int(mesh.vertices.shape[0]),
               "faces": int(mesh.faces.shape[0])}
    _emit(args, payload, [f"wrote {args.out}"])
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="einkernel",
        description="Crooked surfaces in the Einstein universe: "
                    "construction, certification, export.")
    parser.add_argument("--config", help="key = value defaults file")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true",
                       help="machine-readable report on stdout")
        return p

    p = add("basic-example", cmd_basic_example,
            help="mesh the standard crooked surface")
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--out", help="OBJ output path")

    p = add("lightcone", cmd_lightcone, help="mesh a lightcone")
    p.add_argument("--point", default="1:0:0:0:1")
    p.add_argument("--resolution", type=int, default=48)
    p.add_argument("--out", help="OBJ output path")

    p = add("two-cones", cmd_two_cones,
            help="two lightcones and their spacelike circle")
    p.add_argument("--p", default="1:0:0:0:1")
    p.add_argument("--q", default="-1:0:0:0:1")
    p.add_argument("--resolution", type=int, default=48)
    p.add_argument("--out", help="OBJ output path")

    p = add("disjoint-pair", cmd_disjoint_pair,
            help="pull two crooked surfaces apart and certify")
    p.add_argument("--rapidity", type=float, default=1.0)
    p.add_argument("--resolution", type=int, default=32)
    p.add_argument("--certify", action="store_true",
                   help="exit 1 unless certified disjoint")

    p = add("schottky", cmd_schottky,
            help="cyclic crooked Schottky system with ping-pong checks")
    p.add_argument("--rapidity", type=float, default=1.0)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--probes", type=int, default=10000)
    p.add_argument("--grid", type=int, default=12)
    p.add_argument("--certify", action="store_true")

    p = add("cartan", cmd_cartan,
            help="Cartan exponents of generator powers")
    p.add_argument("--rapidity", type=float, default=1.0)
    p.add_argument("--powers", type=int, default=20)

    p = add("certify", cmd_certify,
            help="separation margin between two named surfaces")
    p.add_argument("--surface1", default="basic")
    p.add_argument("--surface2", default="negative")
    p.add_argument("--resolution", type=int, default=32)

    p = add("negative-example", cmd_negative_example,
            help="exact disjointness of the negative-extension example")
    p.add_argument("--certify", action="store_true")
    p.add_argument("--resolution", type=int, default=0,
                   help="also run the sampled margin at this resolution")

    p = add("export-mesh", cmd_export_mesh, help="export a surface mesh")
    p.add_argument("--surface", default="basic")
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--format", choices=["obj", "json"], default="obj")
    p.add_argument("--out", required=True)
    return parser


def main(argv=None) -> int:
    tolerances.load_env_overrides()
    given = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(given)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.config:
        # config supplies defaults; explicit flags win
        for key, value in load_config(args.config).items():
            flag = "--" + key.replace("_", "-")
            if not hasattr(args, key) or flag in given:
                continue
            current = getattr(args, key)
            if isinstance(current, bool):
                setattr(args, key, value.lower() in ("1", "true", "yes"))
            elif isinstance(current, int):
                setattr(args, key, int(value))
            elif isinstance(current, float):
                setattr(args, key, float(value))
            else:
                setattr(args, key, value)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
