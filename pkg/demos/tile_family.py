"""
Walking through Tile(a, 1 - a)
==============================

One parameter moves the 14-edge polygon from the chevron Tile(1, 0)
past the turtle and the equilateral Tile(1, 1) to the hat and then Tile(0, 1).
"""

from fractions import Fraction
from pathlib import Path

from monotile import build_tile, is_simple, parse_qs3, qs3_to_float, shoelace_area
from monotile.render import animate, tile_scene, write_svg

out = Path("demo_output")
out.mkdir(exist_ok=True)

for expr in ["0", "1/4", "(sqrt3-1)/2", "1/2", "(3-sqrt3)/2", "1"]:
    t = build_tile(parse_qs3(expr))
    area = shoelace_area(t.normalized)
    print(f"a = {expr:12} corners {len(t.normalized):2}  area {area}  (~{qs3_to_float(area):.4f})")

###############################################################################
# Simplicity is checked exactly, so a coarse sweep is already a proof for
# those parameters and not a sampling argument.

bad = [k for k in range(1, 50) if not is_simple(build_tile(Fraction(k, 50)).raw)]
print("non-simple members on the k/50 grid:", bad)

write_svg(tile_scene(build_tile(parse_qs3("1/2"))), out / "tile_1_1.svg")

###############################################################################
# Frames for an animation, sharing one viewbox.

names = animate("1/1000", "999/1000", 12, out / "frames")
print(len(names), "frames in", out / "frames")
