"""Laves kites and the tiles assembled from them by edge reflections.

The canonical kite has labeled vertices A, B, C, B' with A = (0, 0) and
B = (1, 0).  An assembly starts from that kite and repeatedly reflects an
existing kite across one of its edges; edge ``i`` joins labeled vertex ``i``
to vertex ``i + 1`` (mod 4) in the order A, B, C, B'.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .geom import (
    GeometryError,
    Isometry,
    Line,
    Point,
    Polygon,
    canonical_signature,
    convex_interiors_overlap,
    line_intersection,
    normalize_polygon,
    point_in_polygon,
    rotate_about,
    scale_polygon,
    shoelace_area,
)
from .numeric import QS3, SQRT3, qs3_sqrt

__all__ = [
    "Kite",
    "AssemblySpec",
    "Assembly",
    "AssemblyError",
    "SearchLimitExceeded",
    "KITE_LABELS",
    "laves_kite",
    "assemble",
    "boundary",
    "search_assembly",
    "parse_spec",
    "format_spec",
    "load_spec",
    "FIXTURES",
]

KITE_LABELS = ("A", "B", "C", "B'")
FIXTURES = ("hat", "turtle", "t01", "t10")


class AssemblyError(ValueError):
    pass


class SearchLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Kite:
    """A kite with vertices in label order A, B, C, B'."""

    polygon: Polygon

    @property
    def A(self) -> Point:
        return self.polygon[0]

    @property
    def B(self) -> Point:
        return self.polygon[1]

    @property
    def C(self) -> Point:
        return self.polygon[2]

    @property
    def B_prime(self) -> Point:
        return self.polygon[3]

    def edge(self, i: int) -> tuple[Point, Point]:
        v = self.polygon.vertices
        return v[i % 4], v[(i + 1) % 4]


def laves_kite() -> Kite:
    """Construct the kite from A = (0,0), B = (1,0).

    B' is B turned 120 degrees counter-clockwise about A; C is where the
    perpendiculars to AB at B and to AB' at B' meet.
    """
    a = Point(0, 0)
    b = Point(1, 0)
    b_prime = rotate_about(b, a, 4)
    ab = Line.through(a, b)
    ab_prime = Line.through(a, b_prime)
    c = line_intersection(ab.perpendicular_at(b), ab_prime.perpendicular_at(b_prime))
    return Kite(Polygon((a, b, c, b_prime)))


_CANON = laves_kite()


@dataclass(frozen=True)
class AssemblySpec:
    steps: tuple[tuple[int, int], ...] = ()

    def __init__(self, steps: Iterable[Sequence[int]] = ()):
        object.__setattr__(self, "steps", tuple((int(s), int(e)) for s, e in steps))

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


@dataclass
class Assembly:
    placements: list[Isometry]
    spec: AssemblySpec
    kites: list[Kite] = field(default_factory=list)

    def __len__(self):
        return len(self.placements)

    def placement_set(self) -> frozenset:
        return frozenset(_kite_key(k.polygon.vertices) for k in self.kites)


def _kite_key(vertices) -> tuple:
    """Label-free identity of a placed kite (B and B' are interchangeable)."""
    a, b, c, bp = vertices
    return (a, c, frozenset((b, bp)))


def assemble(spec: AssemblySpec | Iterable[Sequence[int]]) -> Assembly:
    if not isinstance(spec, AssemblySpec):
        spec = AssemblySpec(spec)
    placements = [Isometry.identity()]
    kites = [_CANON]
    keys = {_kite_key(_CANON.polygon.vertices)}
    for n, (src, e) in enumerate(spec.steps, 1):
        if not 0 <= src < len(kites):
            raise AssemblyError(f"bad index: step {n} uses kite {src}, only {len(kites)} placed")
        if not 0 <= e < 4:
            raise AssemblyError(f"bad index: step {n} uses edge {e}")
        p, q = kites[src].edge(e)
        g = Isometry.reflection(Line.through(p, q)) @ placements[src]
        kite = Kite(_CANON.polygon.transformed(g))
        key = _kite_key(kite.polygon.vertices)
        if key in keys:
            raise AssemblyError(f"duplicate kite at step {n} ({src} {e})")
        for other in kites:
            if convex_interiors_overlap(kite.polygon, other.polygon):
                raise AssemblyError(f"overlap at step {n} ({src} {e})")
        keys.add(key)
        placements.append(g)
        kites.append(kite)
    return Assembly(placements, spec, kites)


def _chain(edges: Iterable[tuple[Point, Point]]) -> Polygon:
    """Chain undirected boundary edges into one closed cycle, oriented CCW."""
    adj: dict[Point, list[Point]] = defaultdict(list)
    count = 0
    for p, q in edges:
        adj[p].append(q)
        adj[q].append(p)
        count += 1
    if not adj:
        raise AssemblyError("empty boundary")
    for v, nbrs in adj.items():
        if len(nbrs) % 2:
            raise AssemblyError(f"open chain at {v}")
        if len(nbrs) != 2:
            raise AssemblyError(f"disconnected boundary (pinch at {v})")
    start = min(adj, key=Point.key)
    cycle = [start]
    prev, cur = None, start
    nxt = min(adj[start], key=Point.key)
    while nxt != start:
        cycle.append(nxt)
        prev, cur = cur, nxt
        a, b = adj[cur]
        nxt = b if a == prev else a
    if len(cycle) != count:
        raise AssemblyError("disconnected boundary")
    poly = Polygon(cycle)
    if shoelace_area(poly).sign() < 0:
        poly = Polygon([cycle[0]] + cycle[:0:-1])
    return poly


def boundary(asm: Assembly) -> Polygon:
    """Outline of the assembly: edges used by two kites cancel."""
    if not asm.kites:
        raise AssemblyError("empty assembly")
    counts: Counter = Counter()
    ends = {}
    for kite in asm.kites:
        for p, q in kite.polygon.edges():
            k = frozenset((p, q))
            counts[k] += 1
            ends[k] = (p, q)
    return _chain(ends[k] for k, c in counts.items() if c == 1)


# -- spec files -------------------------------------------------------------

def parse_spec(text: str) -> AssemblySpec:
    steps = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<kite> <edge>', got {line!r}")
        steps.append((int(parts[0]), int(parts[1])))
    return AssemblySpec(steps)


def spec_header(text: str) -> dict[str, str]:
    """``# key: value`` lines at the top of a spec file."""
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line.startswith("#"):
            if line:
                break
            continue
        body = line[1:].strip()
        if ":" in body:
            k, v = body.split(":", 1)
            out[k.strip()] = v.strip()
    return out


def format_spec(spec: AssemblySpec, header: dict[str, str] | None = None) -> str:
    lines = [f"# {k}: {v}" for k, v in (header or {}).items()]
    lines += [f"{s} {e}" for s, e in spec.steps]
    return "\n".join(lines) + "\n"


def fixture_text(name: str) -> str:
    return resources.files("monotile").joinpath(f"data/{name}.spec").read_text()


def load_spec(name_or_path: str | Path) -> AssemblySpec:
    """Load a shipped fixture by name (``hat``, ``turtle``, ...) or a spec file."""
    if str(name_or_path) in FIXTURES:
        return parse_spec(fixture_text(str(name_or_path)))
    return parse_spec(Path(name_or_path).read_text())


# -- search oracle ------------------------------------------------------------

class _KiteGrid:
    """Memoized reflections of labeled kites; vertices interned to ints."""

    def __init__(self):
        self.vid: dict[Point, int] = {}
        self.points: list[Point] = []
        self.kites: list[tuple[int, int, int, int]] = []
        self.kite_id: dict[tuple[int, int, int, int], int] = {}
        self.shape: dict[tuple, int] = {}   # label-free key -> shape id
        self.shape_of: list[int] = []
        self.nbr: dict[tuple[int, int], int] = {}
        self.fpoints: dict[int, tuple[float, float]] = {}
        self.seed = self.intern(_CANON.polygon.vertices)

    def _v(self, p: Point) -> int:
        i = self.vid.get(p)
        if i is None:
            i = self.vid[p] = len(self.points)
            self.points.append(p)
        return i

    def intern(self, vertices) -> int:
        t = tuple(self._v(p) for p in vertices)
        i = self.kite_id.get(t)
        if i is None:
            i = self.kite_id[t] = len(self.kites)
            self.kites.append(t)
            a, b, c, bp = t
            self.shape_of.append(self.shape.setdefault((a, c, frozenset((b, bp))), len(self.shape)))
        return i

    def reflect(self, k: int, e: int) -> int:
        r = self.nbr.get((k, e))
        if r is None:
            verts = [self.points[i] for i in self.kites[k]]
            p, q = verts[e], verts[(e + 1) % 4]
            g = Isometry.reflection(Line.through(p, q))
            r = self.nbr[(k, e)] = self.intern([g(v) for v in verts])
        return r

    def fpoint(self, i: int) -> tuple[float, float]:
        f = self.fpoints.get(i)
        if f is None:
            f = self.fpoints[i] = self.points[i].to_float()
        return f

    def polygon(self, k: int) -> Polygon:
        return Polygon(self.points[i] for i in self.kites[k])

    def outline(self, kites: Iterable[int]) -> Polygon:
        counts: Counter = Counter()
        for k in kites:
            t = self.kites[k]
            for i in range(4):
                counts[frozenset((t[i], t[(i + 1) % 4]))] += 1
        edges = []
        for key, c in counts.items():
            if c == 1:
                u, v = tuple(key)
                edges.append((self.points[u], self.points[v]))
        return _chain(edges)


def _outline_signature(grid: _KiteGrid, kites) -> tuple | None:
    try:
        poly = normalize_polygon(grid.outline(kites))
    except (AssemblyError, GeometryError):
        return None
    return canonical_signature(poly, "similarity")


def _orthogonal_maps() -> list[Isometry]:
    out = []
    for k in range(12):
        r = Isometry.rotation(k)
        out.append(r)
        out.append(r @ Isometry(1, 0, 0, -1, 0, 0))
    return out


def _target_regions(grid: _KiteGrid, target: Polygon, n_kites: int) -> list[frozenset]:
    """Kite sets (as shape ids) filling a grid-aligned copy of ``target``
    that contains the seed kite.
    """
    poly = normalize_polygon(target)
    s2 = SQRT3 * n_kites / abs(shoelace_area(poly))
    s = qs3_sqrt(s2)
    if s is None:
        # vertex coordinates would leave Q[sqrt3]; no grid copy exists
        return []
    scaled = scale_polygon(poly, s)

    # float distances only prune; accepted regions are verified exactly
    fv = [p.to_float() for p in scaled.vertices]
    diam = max(((x1 - x2) ** 2 + (y1 - y2) ** 2) ** 0.5
               for x1, y1 in fv for x2, y2 in fv)
    seed_centroid = _centroid(grid.polygon(grid.seed))
    sx, sy = seed_centroid.to_float()

    def near(pf: tuple[float, float], r: float) -> bool:
        return (pf[0] - sx) ** 2 + (pf[1] - sy) ** 2 <= r * r

    centroid_of = {}
    layer = [grid.seed]
    reps = {grid.shape_of[grid.seed]: grid.seed}
    centroid_of[grid.shape_of[grid.seed]] = seed_centroid
    while layer:
        nxt = []
        for k in layer:
            for e in range(4):
                r = grid.reflect(k, e)
                sid = grid.shape_of[r]
                if sid in reps:
                    continue
                c = _centroid(grid.polygon(r))
                if near(c.to_float(), diam + 1e-6):
                    reps[sid] = r
                    centroid_of[sid] = c
                    nxt.append(r)
        layer = nxt
    vertex_set = {grid.points[i] for k in reps.values() for i in grid.kites[k]}
    centroids = [(sid, c, c.to_float()) for sid, c in sorted(centroid_of.items())]

    regions = []
    seen = set()
    anchors = sorted((p for p in vertex_set if near(p.to_float(), diam + 2)), key=Point.key)
    for g in _orthogonal_maps():
        moved = [g(p) for p in scaled.vertices]
        for anchor in anchors:
            shift = anchor - moved[0]
            placed = [p + shift for p in moved]
            if not all(p in vertex_set for p in placed):
                continue
            region = Polygon(placed)
            if point_in_polygon(seed_centroid, region) != 1:
                continue
            rf = [p.to_float() for p in placed]
            x0, x1 = min(x for x, _ in rf), max(x for x, _ in rf)
            y0, y1 = min(y for _, y in rf), max(y for _, y in rf)
            inside = frozenset(
                sid for sid, c, (cx, cy) in centroids
                if x0 < cx < x1 and y0 < cy < y1 and _inside(c, (cx, cy), region, rf))
            if len(inside) != n_kites or inside in seen:
                continue
            seen.add(inside)
            try:
                outline = normalize_polygon(grid.outline(reps[sid] for sid in inside))
            except (AssemblyError, GeometryError):
                continue
            if set(outline.vertices) == set(normalize_polygon(region).vertices):
                regions.append(inside)
    return regions


def _inside(p: Point, pf: tuple[float, float], region: Polygon, rf) -> bool:
    """Strict containment; float crossing test unless ``p`` is near an edge."""
    x, y = pf
    n = len(rf)
    inside = False
    for i in range(n):
        ax, ay = rf[i]
        bx, by = rf[(i + 1) % n]
        dx, dy = bx - ax, by - ay
        t = max(0.0, min(1.0, ((x - ax) * dx + (y - ay) * dy) / (dx * dx + dy * dy)))
        if (x - ax - t * dx) ** 2 + (y - ay - t * dy) ** 2 < 1e-6:
            return point_in_polygon(p, region) == 1
        if (ay > y) != (by > y) and x < ax + (y - ay) * dx / dy:
            inside = not inside
    return inside


def _centroid(poly: Polygon) -> Point:
    n = len(poly)
    sx = sum((p.x for p in poly.vertices), QS3(0))
    sy = sum((p.y for p in poly.vertices), QS3(0))
    return Point(sx / n, sy / n)


def search_assembly(target, n_kites: int, limit: int = 10**6,
                    prune: bool | None = None) -> list[AssemblySpec]:
    """Breadth-first search for reflection orders whose outline matches ``target``.

    ``target`` is a polygon or a similarity signature from
    :func:`canonical_signature`.  States are placement sets; two step
    sequences producing the same set of kites count once.  With a polygon
    target the search can be pruned (the default) to kites lying inside a
    grid-aligned copy of the target, which keeps 12- and 24-kite searches
    small.  Results are in discovery order and deterministic.

    Raises :class:`SearchLimitExceeded` once more than ``limit`` states
    have been generated.
    """
    if n_kites < 1:
        raise ValueError("n_kites must be at least 1")
    if isinstance(target, Polygon):
        target_poly = target
        signature = canonical_signature(normalize_polygon(target), "similarity")
    else:
        target_poly = None
        signature = target
    if prune is None:
        prune = target_poly is not None
    if prune and target_poly is None:
        raise ValueError("pruned search needs a target polygon")

    grid = _KiteGrid()
    if prune:
        regions = _target_regions(grid, target_poly, n_kites)
        return _canonical_growth(grid, regions, signature, limit)

    profile = _signature_profile(signature)
    # frontier entries: (labeled kite ids in spec order, steps)
    frontier = [((grid.seed,), ())]
    states = 1
    for _ in range(n_kites - 1):
        seen: set[frozenset] = set()
        nxt = []
        for kites, steps in frontier:
            shapes = {grid.shape_of[k] for k in kites}
            for i, k in enumerate(kites):
                for e in range(4):
                    r = grid.reflect(k, e)
                    sid = grid.shape_of[r]
                    if sid in shapes:
                        continue
                    key = frozenset(shapes | {sid})
                    if key in seen:
                        continue
                    seen.add(key)
                    nxt.append((kites + (r,), steps + ((i, e),)))
                    states += 1
                    if states > limit:
                        raise SearchLimitExceeded(
                            f"search passed {limit} states at size {len(kites) + 1}")
        frontier = nxt
    results = []
    for kites, steps in frontier:
        if _float_profile(grid, kites) != profile:
            continue
        if _outline_signature(grid, kites) == signature:
            results.append(AssemblySpec(steps))
    return results


def _signature_profile(signature) -> tuple[int, tuple[int, ...]]:
    angles = [k for _, _, k in signature[1]]
    return len(angles), tuple(sorted(angles))


def _float_profile(grid: _KiteGrid, kites) -> tuple[int, tuple[int, ...]] | None:
    """Corner count and sorted angle classes of the outline, in floats.

    Grid coordinates are small, so 30-degree classes are far apart and
    rounding is safe; only used to discard candidates before exact checks.
    """
    counts: Counter = Counter()
    for k in kites:
        t = grid.kites[k]
        for i in range(4):
            counts[frozenset((t[i], t[(i + 1) % 4]))] += 1
    adj: dict[int, list[int]] = defaultdict(list)
    for key, c in counts.items():
        if c == 1:
            u, v = tuple(key)
            adj[u].append(v)
            adj[v].append(u)
    if any(len(n) != 2 for n in adj.values()):
        return None
    start = next(iter(adj))
    cycle, prev, cur = [start], start, adj[start][0]
    while cur != start:
        cycle.append(cur)
        a, b = adj[cur]
        prev, cur = cur, (b if a == prev else a)
    if len(cycle) != len(adj):
        return None
    pts = [grid.fpoint(i) for i in cycle]
    n = len(pts)
    area2 = sum(pts[i][0] * pts[(i + 1) % n][1] - pts[(i + 1) % n][0] * pts[i][1] for i in range(n))
    orient = 1 if area2 > 0 else -1
    angles = []
    for i in range(n):
        (x0, y0), (x1, y1), (x2, y2) = pts[i - 1], pts[i], pts[(i + 1) % n]
        turn = math.atan2((x1 - x0) * (y2 - y1) - (y1 - y0) * (x2 - x1),
                          (x1 - x0) * (x2 - x1) + (y1 - y0) * (y2 - y1)) * orient
        k = 6 - round(math.degrees(turn) / 30)
        if k != 6:
            angles.append(k)
    return len(angles), tuple(sorted(angles))


def _canonical_growth(grid: _KiteGrid, regions: list[frozenset], signature,
                      limit: int) -> list[AssemblySpec]:
    """Grow the seed inside each region, always adding the first reachable
    kite in a fixed order, so each region is reached by exactly one path.
    """
    # shape ids are assigned in discovery order, which fixes the growth order
    results = []
    found = set()
    states = 0
    for region in sorted(regions, key=sorted):
        if region in found:
            continue
        kites = [grid.seed]
        shapes = {grid.shape_of[grid.seed]}
        steps = []
        while len(kites) < len(region):
            best = None
            for i, k in enumerate(kites):
                for e in range(4):
                    r = grid.reflect(k, e)
                    sid = grid.shape_of[r]
                    if sid in region and sid not in shapes:
                        if best is None or sid < best[0]:
                            best = (sid, r, i, e)
            if best is None:
                break
            _, r, i, e = best
            kites.append(r)
            shapes.add(grid.shape_of[r])
            steps.append((i, e))
            states += 1
            if states > limit:
                raise SearchLimitExceeded(f"search passed {limit} states")
        if len(kites) == len(region) and _outline_signature(grid, kites) == signature:
            found.add(region)
            results.append(AssemblySpec(steps))
    return results


KITE_COUNTS = {"hat": 8, "turtle": 10, "t01": 12, "t10": 24}


def derive_fixture(name: str, limit: int = 10**6) -> tuple[AssemblySpec, dict[str, str]]:
    """Re-derive a shipped assembly from its parametric target.

    Returns the first spec found by the pruned search together with the
    header recorded in the fixture (target, kite count, exact scale).
    """
    from .geom import similarity_between
    from .tilefamily import NAMED_PARAMS, named_tile

    n = KITE_COUNTS[name]
    tile = named_tile(name)
    found = search_assembly(tile.normalized, n, limit=limit)
    if not found:
        raise AssemblyError(f"no {n}-kite assembly matches {name}")
    spec = found[0]
    outline = normalize_polygon(boundary(assemble(spec)))
    w = similarity_between(tile.normalized, outline)
    header = {
        "target": f"{name} = Tile(a, 1-a) with a = {NAMED_PARAMS[name]}",
        "kites": str(n),
        "scale": str(w.scale) if w and w.exact else "irrational",
        "matches": str(len(found)),
    }
    return spec, header
