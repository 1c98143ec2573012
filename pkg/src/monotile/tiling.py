"""Exact verification of finite periodic patches.

A patch is a list of placed copies of a tile.  :func:`verify_patch` checks
that copies meet along whole edge pieces, that the angles around every
interior vertex close to 360 degrees, and that no two boundaries cross.
Edges are split wherever another copy has a vertex in their interior, so
patches need not be edge-to-edge.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .geom import (
    Isometry,
    Point,
    Polygon,
    interior_angles,
    normalize_polygon,
    point_in_polygon,
    point_on_segment,
    segments_cross_properly,
    shoelace_area,
)
from .numeric import ONE, QS3, parse_qs3
from .tilefamily import named_tile

__all__ = [
    "Placement",
    "PatchReport",
    "verify_patch",
    "translational_closure",
    "lattice_patch",
    "find_lattice",
    "outer_boundary_area",
    "parse_placements",
    "format_placements",
    "load_periodic_fixture",
    "header_vectors",
    "derive_periodic_fixture",
    "write_periodic_fixture",
    "PERIODIC_FIXTURES",
]

PERIODIC_FIXTURES = ("t10", "t01", "t11")


@dataclass(frozen=True)
class Placement:
    tile: Polygon
    map: Isometry
    tile_id: str = ""

    def polygon(self) -> Polygon:
        """Placed copy, oriented counter-clockwise."""
        poly = self.tile.transformed(self.map)
        if shoelace_area(poly).sign() < 0:
            poly = poly.reversed()
        return poly

    def translated(self, v: Point) -> "Placement":
        return Placement(self.tile, Isometry.translation(v) @ self.map, self.tile_id)


@dataclass
class PatchReport:
    interior_vertices_checked: int = 0
    angle_closures: list[tuple[Point, bool]] = field(default_factory=list)
    edge_matches: list[tuple[tuple[Point, Point], bool]] = field(default_factory=list)
    overlaps: list[tuple[int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (all(ok for _, ok in self.angle_closures)
                and all(ok for _, ok in self.edge_matches)
                and not self.overlaps)

    def __bool__(self):
        return self.passed

    def summary(self) -> str:
        bad_angles = sum(not ok for _, ok in self.angle_closures)
        bad_edges = sum(not ok for _, ok in self.edge_matches)
        return (f"{'PASS' if self.passed else 'FAIL'}: "
                f"{self.interior_vertices_checked} interior vertices "
                f"({bad_angles} open), {len(self.edge_matches)} edge pieces "
                f"({bad_edges} unmatched), {len(self.overlaps)} overlapping pairs")


def _bbox(poly: Polygon) -> tuple[float, float, float, float]:
    pts = [p.to_float() for p in poly.vertices]
    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    return min(xs), min(ys), max(xs), max(ys)


def _boxes_touch(a, b, eps=1e-9) -> bool:
    return a[0] <= b[2] + eps and b[0] <= a[2] + eps and a[1] <= b[3] + eps and b[1] <= a[3] + eps


def _refine(poly: Polygon, candidates: list[Point]) -> Polygon:
    """Insert every candidate point lying strictly inside an edge."""
    out = []
    for p, q in poly.edges():
        out.append(p)
        inner = [v for v in candidates
                 if v != p and v != q and point_on_segment(v, p, q)]
        d = q - p
        inner.sort(key=lambda v: float((v - p).dot(d)))
        out.extend(inner)
    return Polygon(out)


def _midpoint(p: Point, q: Point) -> Point:
    return (p + q) * Fraction(1, 2)


def verify_patch(placements: list[Placement]) -> PatchReport:
    if len(placements) < 2:
        raise ValueError("a patch needs at least two placements")
    for i, pl in enumerate(placements):
        if not pl.map.is_orthogonal():
            raise ValueError(f"placement {i} has a non-orthogonal map")
    polys = [pl.polygon() for pl in placements]
    boxes = [_bbox(p) for p in polys]
    n = len(polys)
    near = [[j for j in range(n) if j != i and _boxes_touch(boxes[i], boxes[j])]
            for i in range(n)]

    refined = []
    for i, poly in enumerate(polys):
        cands = list({v for j in near[i] for v in polys[j].vertices})
        refined.append(_refine(poly, cands))

    report = PatchReport()

    # (iii) crossings, containment and exact duplicates
    for i in range(n):
        for j in near[i]:
            if j < i:
                continue
            if _overlapping(refined[i], refined[j]):
                report.overlaps.append((i, j))

    # (i) every edge piece is shared with exactly one opposite piece, or is outer
    directed: dict[frozenset, list[tuple[Point, Point, int]]] = defaultdict(list)
    for i, poly in enumerate(refined):
        for p, q in poly.edges():
            directed[frozenset((p, q))].append((p, q, i))
    outer_vertices = set()
    for key in sorted(directed, key=lambda k: sorted(v.key() for v in k)):
        uses = directed[key]
        p, q, _ = uses[0]
        if len(uses) == 1:
            outer_vertices.update((p, q))
            ok = True
        elif len(uses) == 2:
            (p1, q1, i1), (p2, q2, i2) = uses
            ok = i1 != i2 and p1 == q2 and q1 == p2
        else:
            ok = False
        report.edge_matches.append(((p, q), ok))

    # (ii) angle closure around interior vertices
    angle_at: dict[Point, int] = defaultdict(int)
    for poly in refined:
        for v, k in zip(poly.vertices, interior_angles(poly)):
            angle_at[v] += k
    for v in sorted(angle_at, key=Point.key):
        if v in outer_vertices:
            continue
        report.interior_vertices_checked += 1
        report.angle_closures.append((v, angle_at[v] == 12))
    return report


_EPS = 1e-9


def _forient(a, b, c) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _surely_apart(a, b, c, d) -> bool:
    """Float test that segments ab and cd cannot cross properly."""
    if (max(a[0], b[0]) < min(c[0], d[0]) - _EPS or max(c[0], d[0]) < min(a[0], b[0]) - _EPS
            or max(a[1], b[1]) < min(c[1], d[1]) - _EPS or max(c[1], d[1]) < min(a[1], b[1]) - _EPS):
        return True
    o1, o2 = _forient(a, b, c), _forient(a, b, d)
    o3, o4 = _forient(c, d, a), _forient(c, d, b)
    return (o1 * o2 > 0 and min(abs(o1), abs(o2)) > _EPS) or \
        (o3 * o4 > 0 and min(abs(o3), abs(o4)) > _EPS)


def _float_inside(p, pts) -> int | None:
    """+1/-1 when ``p`` is clearly inside/outside the float polygon, else None."""
    inside = False
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        dx, dy = b[0] - a[0], b[1] - a[1]
        t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / (dx * dx + dy * dy)
        t = min(1.0, max(0.0, t))
        if math.hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy) < 1e-7:
            return None
        if (a[1] > p[1]) != (b[1] > p[1]):
            if p[0] < a[0] + (p[1] - a[1]) * dx / dy:
                inside = not inside
    return 1 if inside else -1


def _overlapping(p: Polygon, q: Polygon) -> bool:
    if set(p.vertices) == set(q.vertices):
        return True
    fp = [v.to_float() for v in p.vertices]
    fq = [v.to_float() for v in q.vertices]
    pe, qe = p.edges(), q.edges()
    for i, (a, b) in enumerate(pe):
        fa, fb = fp[i], fp[(i + 1) % len(fp)]
        for j, (c, d) in enumerate(qe):
            if _surely_apart(fa, fb, fq[j], fq[(j + 1) % len(fq)]):
                continue
            if segments_cross_properly(a, b, c, d):
                return True
    for inner, outer, fi, fo in ((p, q, fp, fq), (q, p, fq, fp)):
        n = len(fi)
        for i, (a, b) in enumerate(inner.edges()):
            fa, fb = fi[i], fi[(i + 1) % n]
            fm = ((fa[0] + fb[0]) / 2, (fa[1] + fb[1]) / 2)
            for exact, approx in ((a, fa), (None, fm)):
                guess = _float_inside(approx, fo)
                if guess == -1:
                    continue
                if guess == 1:
                    return True
                point = exact if exact is not None else _midpoint(a, b)
                if point_in_polygon(point, outer) == 1:
                    return True
    return False


def _same_placement(a: Placement, b: Placement) -> bool:
    return set(a.polygon().vertices) == set(b.polygon().vertices)


def translational_closure(placements: list[Placement], v1: Point, v2: Point) -> bool:
    """True if the patch is compatible with the translation lattice spanned by
    ``v1`` and ``v2``: each translate overlaps the patch and the union still
    verifies.
    """
    if not v1.cross(v2):
        raise ValueError("lattice vectors are linearly dependent")
    for v in (v1, v2):
        moved = [pl.translated(v) for pl in placements]
        union = list(placements)
        coincident = 0
        for m in moved:
            if any(_same_placement(m, pl) for pl in placements):
                coincident += 1
            else:
                union.append(m)
        if not coincident or not verify_patch(union).passed:
            return False
    return True


def outer_boundary_area(placements: list[Placement]) -> QS3:
    """Area enclosed by the unmatched edge pieces (holes count negatively)."""
    polys = [pl.polygon() for pl in placements]
    verts = list({v for p in polys for v in p.vertices})
    pieces: dict[frozenset, list[tuple[Point, Point]]] = defaultdict(list)
    for poly in polys:
        for p, q in _refine(poly, verts).edges():
            pieces[frozenset((p, q))].append((p, q))
    total = QS3(0)
    for uses in pieces.values():
        if len(uses) == 1:
            p, q = uses[0]
            total = total + p.cross(q)
    return total / 2


# -- periodic patch search ----------------------------------------------------

def lattice_patch(cell: list[Placement], v1: Point, v2: Point, size: int = 3) -> list[Placement]:
    out = []
    for i in range(size):
        for j in range(size):
            shift = v1 * i + v2 * j
            out.extend(pl.translated(shift) for pl in cell)
    return out


def _candidate_vectors(polys: list[Polygon]) -> list[Point]:
    pts = {v for p in polys for v in p.vertices}
    vecs = {p - q for p in pts for q in pts if p != q}
    return sorted(vecs, key=lambda v: (float(v.norm2()), v.key()))


class _ClearShifts:
    """Memoized test that a cell and its translate by ``v`` do not overlap.

    Uses unrefined outlines, which can miss overlaps but never invents one,
    so it only prunes lattice candidates that must fail.
    """

    def __init__(self, polys: list[Polygon]):
        self.polys = polys
        self.boxes = [_bbox(p) for p in polys]
        self.cache: dict[Point, bool] = {}

    def __call__(self, v: Point) -> bool:
        if v not in self.cache:
            self.cache[v] = self._check(v)
        return self.cache[v]

    def _check(self, v: Point) -> bool:
        dx, dy = v.to_float()
        shift = Isometry.translation(v)
        for p, bp in zip(self.polys, self.boxes):
            for q, bq in zip(self.polys, self.boxes):
                moved = (bq[0] + dx, bq[1] + dy, bq[2] + dx, bq[3] + dy)
                if _boxes_touch(bp, moved) and _overlapping(p, q.transformed(shift)):
                    return False
        return True


def _glued_copies(tile: Polygon, tile_id: str) -> list[Placement]:
    """Isometric copies of ``tile`` sharing a full edge with it, without overlap."""
    base = Placement(tile, Isometry.identity(), tile_id)
    edges = tile.edges()
    out = []
    seen = set()
    for k in range(12):
        for reflect in (False, True):
            m = Isometry.rotation(k)
            if reflect:
                m = m @ Isometry(1, 0, 0, -1, 0, 0)
            moved = tile.transformed(m)
            for (p, q), (r, s) in itertools.product(edges, moved.edges()):
                if (s - r) != (p - q) and (s - r) != (q - p):
                    continue
                for target in ((q, p), (p, q)):
                    shift = target[0] - r
                    if s + shift != target[1]:
                        continue
                    g = Isometry.translation(shift) @ m
                    cand = Placement(tile, g, tile_id)
                    key = frozenset(cand.polygon().vertices)
                    if key in seen or key == frozenset(tile.vertices):
                        continue
                    seen.add(key)
                    if verify_patch([base, cand]).passed:
                        out.append(cand)
    return out


def find_lattice(tile: Polygon, tile_id: str = "", max_cell: int = 2,
                 log: list[str] | None = None):
    """Search for a periodic patch of ``tile``.

    Tries a one-tile cell (pure translations) first, then two-tile cells
    made of the tile and a glued isometric copy.  Returns
    ``(cell, v1, v2)`` or ``None``.
    """
    log = log if log is not None else []
    tile = normalize_polygon(tile)
    area = shoelace_area(tile)
    cells = [[Placement(tile, Isometry.identity(), tile_id)]]
    if max_cell >= 2:
        cells += [[cells[0][0], g] for g in _glued_copies(tile, tile_id)]
    for index, cell in enumerate(cells):
        polys = [pl.polygon() for pl in cell]
        cell_area = area * len(cell)
        vecs = _candidate_vectors(polys)
        clear = _ClearShifts(polys)
        vecs = [v for v in vecs if clear(v)]
        label = "cell of 1" if len(cell) == 1 else (
            f"cell of 2, glued copy {index} "
            f"({'mirrored' if cell[1].map.det() != ONE else 'direct'}), {len(vecs)} clear shifts")
        tried = 0
        for v1, v2 in itertools.combinations(vecs, 2):
            if abs(v1.cross(v2)) != cell_area:
                continue
            if not (clear(v1 + v2) and clear(v1 - v2)):
                continue
            if v1.cross(v2).sign() < 0:
                v1, v2 = v2, v1
            tried += 1
            patch = lattice_patch(cell, v1, v2)
            if verify_patch(patch).passed and translational_closure(patch, v1, v2):
                log.append(f"{label}: found v1={_fmt_vec(v1)} v2={_fmt_vec(v2)} "
                           f"after {tried} lattice candidates")
                return cell, v1, v2
        log.append(f"{label}: no lattice among {tried} candidates")
    return None


def _fmt_vec(v: Point) -> str:
    return f"({_lit(v.x)}, {_lit(v.y)})"


def _lit(x: QS3) -> str:
    return str(x).replace(" ", "")


# -- fixture files ------------------------------------------------------------

def format_placements(placements: list[Placement], header: dict[str, str] | None = None) -> str:
    lines = [f"# {k}: {v}" for k, v in (header or {}).items()]
    for pl in placements:
        m = pl.map
        fields = [_lit(getattr(m, n)) for n in ("m00", "m01", "m10", "m11", "tx", "ty")]
        lines.append(" ".join(fields + [pl.tile_id or "-", "-"]))
    return "\n".join(lines) + "\n"


def parse_placements(text: str) -> list[Placement]:
    out = []
    tiles: dict[str, Polygon] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 8:
            raise ValueError(f"line {lineno}: expected 8 fields, got {len(parts)}")
        values = [parse_qs3(f) for f in parts[:6]]
        tile_id = parts[6]
        if tile_id not in tiles:
            tiles[tile_id] = named_tile(tile_id).normalized
        out.append(Placement(tiles[tile_id], Isometry(*values), tile_id))
    return out


def header_vectors(text: str) -> tuple[Point, Point]:
    vec = {}
    for line in text.splitlines():
        if line.startswith("#") and ":" in line:
            k, v = line[1:].split(":", 1)
            if k.strip() in ("v1", "v2"):
                x, y = v.split()
                vec[k.strip()] = Point(parse_qs3(x), parse_qs3(y))
    return vec["v1"], vec["v2"]


def load_periodic_fixture(name: str) -> tuple[list[Placement], Point, Point]:
    text = resources.files("monotile").joinpath(f"data/periodic_{name}.txt").read_text()
    return parse_placements(text), *header_vectors(text)


def derive_periodic_fixture(name: str, size: int = 3):
    """Search a periodic patch for a named tile; returns (text, log)."""
    log: list[str] = []
    tile = named_tile(name).normalized
    found = find_lattice(tile, name, log=log)
    if found is None:
        return None, log
    cell, v1, v2 = found
    patch = lattice_patch(cell, v1, v2, size)
    reflected = any(pl.map.det() != ONE for pl in cell)
    header = {
        "generated by": f"monotile.tiling.derive_periodic_fixture({name!r})",
        "tile": name,
        "v1": f"{_lit(v1.x)} {_lit(v1.y)}",
        "v2": f"{_lit(v2.x)} {_lit(v2.y)}",
        "cell": str(len(cell)),
        "reflected copies": "yes" if reflected else "no",
    }
    return format_placements(patch, header), log


def write_periodic_fixture(name: str, directory: Path) -> list[str]:
    text, log = derive_periodic_fixture(name)
    transcript = "\n".join(log) + "\n"
    (directory / f"periodic_{name}.log").write_text(transcript)
    if text is not None:
        (directory / f"periodic_{name}.txt").write_text(text)
    return log
