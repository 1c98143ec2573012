"""
Where the kite comes from
=========================

Joining the centers of the faces around each vertex of a regular or
semi-regular tessellation gives its Laves dual.  Triangles give hexagons;
the (3.4.6.4) tessellation gives kites.
"""

from collections import Counter
from pathlib import Path

from monotile import dual, laves_kite, patch_3464, similarity_between, triangular_patch
from monotile.render import patch_scene, write_svg

out = Path("demo_output")
out.mkdir(exist_ok=True)

tri = triangular_patch(3)
hexes = dual(tri)
print("triangles:", len(tri.faces), " dual faces:", Counter(len(f) for f in hexes.faces))
write_svg(patch_scene(tri.faces, hexes.faces), out / "dual_triangles.svg")

###############################################################################
# Every dual face of (3.4.6.4) is the same kite, at a scale that stays
# inside Q[sqrt3].

base = patch_3464(2)
kites = dual(base)
kite = laves_kite().polygon
scales = Counter(str(similarity_between(kite, f).scale) for f in kites.faces)
print("dual faces:", len(kites.faces), " scales:", dict(scales))
write_svg(patch_scene(base.faces, kites.faces), out / "dual_3464.svg")
