"""
The hat as eight kites
======================

Reflect one kite of the Laves grid across its own edges, seven times,
and the outline that survives is the hat, enlarged by 1 + sqrt3.
"""

from pathlib import Path

from monotile import assemble, boundary, load_spec, named_tile, shoelace_area, similarity_between
from monotile.geom import normalize_polygon
from monotile.render import assembly_scene, write_svg

out = Path("demo_output")
out.mkdir(exist_ok=True)

# each step is (index of an already placed kite, edge to reflect across)
spec = load_spec("hat")
print("steps:", list(spec))

asm = assemble(spec)
outline = normalize_polygon(boundary(asm))
print("kites:", len(asm), " outline corners:", len(outline))
print("area:", shoelace_area(outline))

###############################################################################
# Compare with the parametric hat.  The witness is exact: a scale in
# Q[sqrt3] and an isometry that carries every corner onto the outline.

w = similarity_between(named_tile("hat").normalized, outline)
print("scale:", w.scale, " reflected:", w.reflected)

write_svg(assembly_scene(asm, labels=True), out / "hat_kites.svg")

###############################################################################
# The turtle needs ten kites and the same scale.

turtle = assemble(load_spec("turtle"))
w = similarity_between(named_tile("turtle").normalized, normalize_polygon(boundary(turtle)))
print("turtle kites:", len(turtle), " scale:", w.scale)
write_svg(assembly_scene(turtle), out / "turtle_kites.svg")
