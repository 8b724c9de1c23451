"""Geometry kernel for crooked surfaces in the 3-dimensional Einstein universe.

Modules
-------
forms      fixed (3,2) and (2,1) bilinear forms, causal classes, null frames
crooked    crooked planes, halfspaces, stem quadrants, affine disjointness
einstein   projective model: points, photons, tori, compactified surfaces
group      the conformal group O(3,2), lifts, Cartan data, distortion classes
meshing    surface sampling, welding, OBJ and JSON export
certify    separation margins, component counts, exact piece-pair analysis
schottky   pull-apart pipeline, crooked Schottky systems, word dynamics
cli        command-line front end (``einkernel ...``)
"""

from .forms import (CausalClass, NullFrame, causal_class, form21, form32,
                    null_frame, orientation_det, vec3, vec5)
from .crooked import (AllowablePair, CrookedHalfspace, CrookedPlane, Extension,
                      StemQuadrant, affine_disjointness_certificate,
                      allowable_pair, consistently_oriented, in_crooked_plane,
                      in_halfspace, in_stem, in_stem_quadrant, in_wing,
                      ultraparallel)
from .einstein import (CrookedSurface, EinPoint, EinTorus, Photon, TorusData,
                       P0, PINF, apply, compactify, cylinder_coords, embed,
                       in_crooked_surface, incident, lightcone_contains,
                       lightcone_intersection, param_chart, point,
                       surface_from_torus_data, surface_torus_data,
                       torus_from_data, unembed)
from .group import (CartanPair, DistortionClass, DistortionThresholds, Iso32,
                    cartan_projection, classify_distortion, lift_linear,
                    lift_translation, mu_example, rho)
from .meshing import SurfaceMesh, lightcone_mesh, mesh_to_json, mesh_to_obj, sample_surface
from .certify import (SeparationReport, component_count, component_report,
                      exact_surface_pieces, exact_surfaces_disjoint,
                      mesh_topology_check, negative_example_exact_check,
                      negative_example_surfaces, round_distance,
                      separation_margin, spacelike_circle_check,
                      transform_pieces)
from .schottky import (DisjointPairSpec, SchottkySystem, ReducedWord,
                       cyclic_schottky, fundamental_domain_report,
                       pingpong_check, pull_apart, pull_apart_stage,
                       standard_cyclic_example, word_images)

__version__ = "0.1.0"
