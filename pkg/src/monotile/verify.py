"""Invariant suites shared by the command line and the test-suite."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .geom import (
    interior_angles,
    is_simple,
    normalize_polygon,
    shoelace_area,
    similarity_between,
)
from .kite import (
    FIXTURES, KITE_COUNTS, assemble, boundary, fixture_text, laves_kite, load_spec, spec_header,
)
from .laves import dual, patch_3464, triangular_patch
from .numeric import QS3, SQRT3, parse_qs3
from .tilefamily import A_EDGES, B_EDGES, LABELS, build_tile, load_sign_table, named_tile, trace
from .tiling import PERIODIC_FIXTURES, load_periodic_fixture, translational_closure, verify_patch

__all__ = ["Check", "closure_checks", "assembly_checks", "dual_checks", "patch_checks", "SUITES"]

CLOSURE_PARAMS = ("1/3", "1/2", "37/100", "(sqrt3-1)/2", "(3-sqrt3)/2")


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def _edge_multiset_ok(tile) -> bool:
    a2, b2 = tile.a * tile.a, tile.b * tile.b
    lengths = {LABELS[i]: (q - p).norm2() for i, (p, q) in enumerate(tile.raw.edges())}
    return all(lengths[e] == a2 for e in A_EDGES) and all(lengths[e] == b2 for e in B_EDGES)


def closure_gap_coefficients() -> tuple:
    """Closure gap |NA|^2 - a^2 written as c0 + c1*a + c2*a^2, from three exact samples."""
    signs = load_sign_table()
    samples = []
    for a in (QS3(0), QS3(Fraction(1, 2)), QS3(1)):
        pts, _ = trace(a, signs)
        samples.append((pts[-1] - pts[0]).norm2() - a * a)
    g0, gh, g1 = samples
    c0 = g0
    # g(1/2) = c0 + c1/2 + c2/4, g(1) = c0 + c1 + c2
    c2 = (g1 - 2 * gh + g0) * 2
    c1 = g1 - c0 - c2
    return c0, c1, c2


def closure_checks(grid: int = 98) -> list[Check]:
    out = []
    for expr in CLOSURE_PARAMS:
        t = build_tile(parse_qs3(expr))
        closes = t.raw[0] == t.vertex("A") and (t.raw[0] - t.raw[-1]).norm2() == t.a * t.a
        out.append(Check(f"closure a={expr}", closes and _edge_multiset_ok(t),
                         "edges 8 x a + 6 x (1-a)"))
        out.append(Check(f"angle sum a={expr}", 30 * sum(interior_angles(t.raw)) == 2160))
    c = closure_gap_coefficients()
    out.append(Check("closure identity in a", all(not x for x in c),
                     "coefficients " + ", ".join(map(str, c))))
    bad = [k for k in range(1, grid) if not is_simple(build_tile(QS3(Fraction(k, grid))).raw)]
    out.append(Check(f"simple for a = k/{grid}, k = 1..{grid - 1}", not bad,
                     f"non-simple at k in {bad}" if bad else ""))
    return out


def assembly_checks() -> list[Check]:
    out = []
    for name in FIXTURES:
        asm = assemble(load_spec(name))
        n = KITE_COUNTS[name]
        outline = normalize_polygon(boundary(asm))
        area = shoelace_area(outline)
        out.append(Check(f"{name} kites", len(asm) == n, f"{len(asm)} (expected {n})"))
        out.append(Check(f"{name} area", area == SQRT3 * n, str(area)))
        w = similarity_between(named_tile(name).normalized, outline)
        recorded = spec_header(fixture_text(name)).get("scale")
        ok = w is not None and w.exact and recorded is not None and w.scale == parse_qs3(recorded)
        out.append(Check(f"{name} similar to Tile", ok,
                         f"scale {w.scale}" if w is not None and w.exact else "no exact witness"))
    return out


def dual_checks() -> list[Check]:
    out = []
    tri = dual(triangular_patch(3))
    regular = all(
        len(f) == 6
        and len({(q - p).norm2() for p, q in f.edges()}) == 1
        and interior_angles(f) == [4] * 6
        for f in tri.faces)
    out.append(Check("dual of (3.3.3.3.3.3) is hexagonal", regular, f"{len(tri.faces)} faces"))
    kite = laves_kite().polygon
    scale = (3 + SQRT3) / 6
    rh = dual(patch_3464(2))
    scales = Counter()
    for f in rh.faces:
        w = similarity_between(kite, f)
        scales[str(w.scale) if w is not None and w.exact else None] += 1
    ok = set(scales) == {str(scale)}
    out.append(Check("dual of (3.4.6.4) is the Laves kite", ok,
                     f"{len(rh.faces)} faces, scales {dict(scales)}"))
    return out


def patch_checks() -> list[Check]:
    out = []
    for name in PERIODIC_FIXTURES:
        try:
            placements, v1, v2 = load_periodic_fixture(name)
        except FileNotFoundError:
            out.append(Check(f"periodic {name}", name != "t10", "no fixture (search transcript only)"))
            continue
        report = verify_patch(placements)
        out.append(Check(f"periodic {name} patch", report.passed, report.summary()))
        out.append(Check(f"periodic {name} lattice", translational_closure(placements, v1, v2)))
    return out


SUITES = {
    "closure": closure_checks,
    "assemblies": assembly_checks,
    "duals": dual_checks,
    "patches": patch_checks,
}
