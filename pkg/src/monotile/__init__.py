"""Exact constructions of the hat, turtle and the Tile(a, 1-a) family over Q[sqrt3]."""

from .geom import (
    Isometry,
    Line,
    Point,
    Polygon,
    Similarity,
    canonical_signature,
    is_simple,
    shoelace_area,
    similarity_between,
)
from .kite import Assembly, AssemblySpec, assemble, boundary, laves_kite, load_spec, search_assembly
from .laves import dual, patch_3464, triangular_patch
from .numeric import QS3, SQRT3, parse_qs3, qs3_arith, qs3_sign, qs3_sqrt, qs3_to_float
from .render import Scene, animate, scene_to_svg
from .tilefamily import build_tile, named_tile, verify_prop2
from .tiling import Placement, translational_closure, verify_patch

__version__ = "0.1.0"

__all__ = [
    "QS3", "SQRT3", "parse_qs3", "qs3_arith", "qs3_sign", "qs3_sqrt", "qs3_to_float",
    "Point", "Line", "Isometry", "Polygon", "Similarity",
    "canonical_signature", "is_simple", "shoelace_area", "similarity_between",
    "laves_kite", "Assembly", "AssemblySpec", "assemble", "boundary", "load_spec", "search_assembly",
    "build_tile", "named_tile", "verify_prop2",
    "triangular_patch", "patch_3464", "dual",
    "Placement", "verify_patch", "translational_closure",
    "Scene", "scene_to_svg", "animate",
]
