"""
The degenerate members tile periodically
========================================

Tile(1, 0), Tile(0, 1) and Tile(1, 1) all admit lattice tilings.  The
shipped fixtures come from a small edge-gluing search; here they are
checked again and drawn.
"""

from pathlib import Path

from monotile import translational_closure, verify_patch
from monotile.render import patch_scene, write_svg
from monotile.tiling import load_periodic_fixture

out = Path("demo_output")
out.mkdir(exist_ok=True)

for name in ("t10", "t01", "t11"):
    placements, v1, v2 = load_periodic_fixture(name)
    report = verify_patch(placements)
    mirrored = sum(p.map.det() < 0 for p in placements)
    print(f"{name}: {len(placements)} copies ({mirrored} mirrored)")
    print("   ", report.summary())
    print("    lattice", v1, v2, "closed:", translational_closure(placements, v1, v2))
    write_svg(patch_scene([p.polygon() for p in placements]), out / f"periodic_{name}.svg")
