"""Exact planar geometry over Q[sqrt3].

Directions are restricted to multiples of 30 degrees, which keeps every
rotation matrix inside Q[sqrt3].  Polygons are plain vertex lists; the
predicates here (area, simplicity, angle classes, congruence and
similarity signatures) never round.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .numeric import HALF, ONE, QS3, SQRT3, ZERO, qs3_sqrt

__all__ = [
    "Point",
    "Line",
    "Isometry",
    "Polygon",
    "Similarity",
    "GeometryError",
    "unit",
    "rotate_about",
    "reflect_across",
    "line_intersection",
    "point_along",
    "shoelace_area",
    "is_simple",
    "angle_class",
    "interior_angles",
    "normalize_polygon",
    "canonical_signature",
    "similarity_between",
    "scale_polygon",
    "segments_cross",
    "segments_cross_properly",
    "point_on_segment",
    "point_in_polygon",
    "convex_interiors_overlap",
]


class GeometryError(ValueError):
    """Raised when an input falls outside the supported exact geometry."""


class Point:
    """Exact point (also used as a 2D vector)."""

    __slots__ = ("x", "y")

    def __init__(self, x, y):
        object.__setattr__(self, "x", QS3.coerce(x))
        object.__setattr__(self, "y", QS3.coerce(y))

    def __setattr__(self, name, value):
        raise AttributeError("Point is immutable")

    def __reduce__(self):
        return (Point, (self.x, self.y))

    def __add__(self, o: "Point") -> "Point":
        return Point(self.x + o.x, self.y + o.y)

    def __sub__(self, o: "Point") -> "Point":
        return Point(self.x - o.x, self.y - o.y)

    def __mul__(self, k) -> "Point":
        return Point(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __neg__(self) -> "Point":
        return Point(-self.x, -self.y)

    def dot(self, o: "Point") -> QS3:
        return self.x * o.x + self.y * o.y

    def cross(self, o: "Point") -> QS3:
        return self.x * o.y - self.y * o.x

    def norm2(self) -> QS3:
        return self.dot(self)

    def is_zero(self) -> bool:
        return not self.x and not self.y

    def __eq__(self, o):
        if not isinstance(o, Point):
            return NotImplemented
        return self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash((self.x, self.y))

    def key(self):
        return (self.x.key(), self.y.key())

    def to_float(self) -> tuple[float, float]:
        return (float(self.x), float(self.y))

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self):
        return f"Point({self.x}, {self.y})"


ORIGIN = Point(0, 0)

# cos, sin of k*30 degrees
_COS_SIN = [
    (ONE, ZERO),
    (SQRT3 * HALF, HALF),
    (HALF, SQRT3 * HALF),
    (ZERO, ONE),
    (-HALF, SQRT3 * HALF),
    (-(SQRT3 * HALF), HALF),
    (-ONE, ZERO),
    (-(SQRT3 * HALF), -HALF),
    (-HALF, -(SQRT3 * HALF)),
    (ZERO, -ONE),
    (HALF, -(SQRT3 * HALF)),
    (SQRT3 * HALF, -HALF),
]


def unit(k: int) -> Point:
    """Unit vector at heading ``k * 30`` degrees."""
    c, s = _COS_SIN[k % 12]
    return Point(c, s)


def _rot(v: Point, k: int) -> Point:
    c, s = _COS_SIN[k % 12]
    return Point(c * v.x - s * v.y, s * v.x + c * v.y)


@dataclass(frozen=True)
class Line:
    anchor: Point
    direction: Point

    def __post_init__(self):
        if self.direction.is_zero():
            raise GeometryError("line direction must be non-zero")

    @classmethod
    def through(cls, p: Point, q: Point) -> "Line":
        return cls(p, q - p)

    def perpendicular_at(self, p: Point) -> "Line":
        d = self.direction
        return Line(p, Point(-d.y, d.x))

    def parallel_at(self, p: Point) -> "Line":
        return Line(p, self.direction)


@dataclass(frozen=True)
class Isometry:
    """``p -> M p + t`` with M orthogonal; entries exact."""

    m00: QS3
    m01: QS3
    m10: QS3
    m11: QS3
    tx: QS3
    ty: QS3

    def __post_init__(self):
        for name in ("m00", "m01", "m10", "m11", "tx", "ty"):
            object.__setattr__(self, name, QS3.coerce(getattr(self, name)))

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(ONE, ZERO, ZERO, ONE, ZERO, ZERO)

    @classmethod
    def rotation(cls, k: int, center: Point = ORIGIN) -> "Isometry":
        c, s = _COS_SIN[k % 12]
        r = cls(c, -s, s, c, ZERO, ZERO)
        return cls.translation(center) @ r @ cls.translation(-center)

    @classmethod
    def translation(cls, v: Point) -> "Isometry":
        return cls(ONE, ZERO, ZERO, ONE, v.x, v.y)

    @classmethod
    def reflection(cls, line: Line) -> "Isometry":
        d = line.direction
        n2 = d.norm2()
        # Householder-style mirror: M = (2 d d^T - |d|^2 I) / |d|^2
        m00 = (d.x * d.x - d.y * d.y) / n2
        m01 = (2 * d.x * d.y) / n2
        m = cls(m00, m01, m01, -m00, ZERO, ZERO)
        a = line.anchor
        return cls.translation(a) @ m @ cls.translation(-a)

    def __call__(self, p: Point) -> Point:
        return Point(self.m00 * p.x + self.m01 * p.y + self.tx,
                     self.m10 * p.x + self.m11 * p.y + self.ty)

    def linear(self, v: Point) -> Point:
        return Point(self.m00 * v.x + self.m01 * v.y,
                     self.m10 * v.x + self.m11 * v.y)

    def __matmul__(self, o: "Isometry") -> "Isometry":
        """Composition: ``(self @ o)(p) == self(o(p))``."""
        return Isometry(
            self.m00 * o.m00 + self.m01 * o.m10,
            self.m00 * o.m01 + self.m01 * o.m11,
            self.m10 * o.m00 + self.m11 * o.m10,
            self.m10 * o.m01 + self.m11 * o.m11,
            self.m00 * o.tx + self.m01 * o.ty + self.tx,
            self.m10 * o.tx + self.m11 * o.ty + self.ty,
        )

    def inverse(self) -> "Isometry":
        # orthogonal: M^-1 = M^T
        t = Point(self.tx, self.ty)
        mt = Isometry(self.m00, self.m10, self.m01, self.m11, ZERO, ZERO)
        mt_t = mt.linear(t)
        return Isometry(self.m00, self.m10, self.m01, self.m11, -mt_t.x, -mt_t.y)

    def det(self) -> QS3:
        return self.m00 * self.m11 - self.m01 * self.m10

    def is_orthogonal(self) -> bool:
        return (self.m00 * self.m00 + self.m10 * self.m10 == ONE
                and self.m01 * self.m01 + self.m11 * self.m11 == ONE
                and self.m00 * self.m01 + self.m10 * self.m11 == ZERO)

    def key(self):
        return tuple(getattr(self, n).key()
                     for n in ("m00", "m01", "m10", "m11", "tx", "ty"))


@dataclass(frozen=True)
class Polygon:
    """Closed polygon; the last vertex connects back to the first."""

    vertices: tuple[Point, ...]

    def __init__(self, vertices: Iterable[Point]):
        object.__setattr__(self, "vertices", tuple(vertices))

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def transformed(self, g: Isometry) -> "Polygon":
        return Polygon(g(p) for p in self.vertices)

    def reversed(self) -> "Polygon":
        return Polygon(reversed(self.vertices))

    def area(self) -> QS3:
        return shoelace_area(self)


@dataclass(frozen=True)
class Similarity:
    """Witness that ``q == map(scale * p)`` vertex for vertex.

    ``scale``/``map`` are ``None`` when the two polygons have equal
    similarity signatures but the ratio has no square root in Q[sqrt3].
    """

    scale: QS3 | None
    map: Isometry | None
    reflected: bool
    ratio2: QS3

    @property
    def exact(self) -> bool:
        return self.scale is not None


# -- primitive constructions --------------------------------------------------

def rotate_about(p: Point, center: Point, k: int) -> Point:
    """Rotate ``p`` by ``k * 30`` degrees about ``center`` (positive = CCW)."""
    return center + _rot(p - center, k)


def reflect_across(p: Point, line: Line) -> Point:
    d = line.direction
    rel = p - line.anchor
    t = rel.dot(d) / d.norm2()
    foot = line.anchor + d * t
    return foot * 2 - p


def line_intersection(l1: Line, l2: Line) -> Point | None:
    den = l1.direction.cross(l2.direction)
    if not den:
        return None
    t = (l2.anchor - l1.anchor).cross(l2.direction) / den
    return l1.anchor + l1.direction * t


def point_along(start: Point, direction: Point, dist) -> Point:
    if direction.norm2() != ONE:
        raise GeometryError(f"direction {direction} is not an exact unit vector")
    return start + direction * QS3.coerce(dist)


# -- polygon predicates -------------------------------------------------------

def shoelace_area(poly: Polygon) -> QS3:
    v = poly.vertices
    n = len(v)
    total = ZERO
    for i in range(n):
        total = total + v[i].cross(v[(i + 1) % n])
    return total * Fraction(1, 2)


def _orient(a: Point, b: Point, c: Point) -> int:
    return (b - a).cross(c - a).sign()


def point_on_segment(p: Point, a: Point, b: Point) -> bool:
    """True if ``p`` lies on the closed segment ``ab``."""
    if _orient(a, b, p) != 0:
        return False
    return (p - a).dot(p - b).sign() <= 0


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True if the closed segments ``ab`` and ``cd`` share any point."""
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return ((o1 == 0 and point_on_segment(c, a, b))
            or (o2 == 0 and point_on_segment(d, a, b))
            or (o3 == 0 and point_on_segment(a, c, d))
            or (o4 == 0 and point_on_segment(b, c, d)))


def segments_cross_properly(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True if ``ab`` and ``cd`` cross at a single point interior to both."""
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def is_simple(poly: Polygon) -> bool:
    edges = poly.edges()
    n = len(edges)
    if n < 3 or len(set(poly.vertices)) != n:
        return False
    for i in range(n):
        a, b = edges[i]
        for j in range(i + 1, n):
            c, d = edges[j]
            if j == i + 1 or (i == 0 and j == n - 1):
                # adjacent edges: only the shared vertex may be common
                shared = b if j == i + 1 else a
                other_i = a if j == i + 1 else b
                other_j = d if j == i + 1 else c
                if point_on_segment(other_j, a, b) and other_j != shared:
                    return False
                if point_on_segment(other_i, c, d) and other_i != shared:
                    return False
                continue
            if segments_cross(a, b, c, d):
                return False
    return True


def point_in_polygon(p: Point, poly: Polygon) -> int:
    """+1 strictly inside, 0 on the boundary, -1 outside (exact crossing test)."""
    inside = False
    for a, b in poly.edges():
        if point_on_segment(p, a, b):
            return 0
        if (a.y > p.y) != (b.y > p.y):
            # x-coordinate of the crossing compared without division
            s = (b - a).cross(p - a).sign()
            if (s > 0) == (b.y > a.y):
                inside = not inside
    return 1 if inside else -1


def angle_class(u: Point, v: Point) -> int | None:
    """Smallest ``k`` in 0..11 such that rotating ``u`` by ``k*30`` deg points along ``v``."""
    if u.is_zero() or v.is_zero():
        raise GeometryError("angle_class needs non-zero vectors")
    # float guess first, confirmed exactly; the loop is the fallback
    (ux, uy), (vx, vy) = u.to_float(), v.to_float()
    guess = round(math.degrees(math.atan2(ux * vy - uy * vx, ux * vx + uy * vy)) / 30) % 12
    w = _rot(u, guess)
    if not w.cross(v) and w.dot(v).sign() > 0:
        return guess
    for k in range(12):
        w = _rot(u, k)
        if not w.cross(v) and w.dot(v).sign() > 0:
            return k
    return None


def interior_angles(poly: Polygon) -> list[int]:
    """Interior angle classes (units of 30 deg); orientation-independent."""
    v = poly.vertices
    n = len(v)
    ccw = shoelace_area(poly).sign() > 0
    out = []
    for i in range(n):
        prev, cur, nxt = v[i - 1], v[i], v[(i + 1) % n]
        # for CCW traversal the interior is swept from (nxt-cur) CCW to (prev-cur)
        u, w = (nxt - cur, prev - cur) if ccw else (prev - cur, nxt - cur)
        k = angle_class(u, w)
        if k is None:
            raise GeometryError(f"angle at {cur} is not a multiple of 30 degrees")
        out.append(k if k else 12)
    return out


def _collinear_straight(prev: Point, cur: Point, nxt: Point) -> bool:
    d1, d2 = cur - prev, nxt - cur
    return not d1.cross(d2) and d1.dot(d2).sign() > 0


def normalize_polygon(poly: Polygon) -> Polygon:
    """Drop zero-length edges and straight-angle vertices; orient CCW."""
    pts: list[Point] = []
    for p in poly.vertices:
        if not pts or pts[-1] != p:
            pts.append(p)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        for i in range(len(pts)):
            prev, cur, nxt = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
            if cur == nxt:
                del pts[i]
                changed = True
                break
            if _collinear_straight(prev, cur, nxt):
                del pts[i]
                changed = True
                break
    if len(pts) < 3:
        raise GeometryError("degenerate polygon")
    out = Polygon(pts)
    area = shoelace_area(out)
    if not area:
        raise GeometryError("degenerate polygon")
    if area.sign() < 0:
        out = out.reversed()
    return out


def scale_polygon(poly: Polygon, k) -> Polygon:
    k = QS3.coerce(k)
    return Polygon(p * k for p in poly.vertices)


# -- congruence / similarity --------------------------------------------------

def _edge_angle_sequence(poly: Polygon) -> list[tuple[QS3, int]]:
    """(squared length of edge i, interior angle class at vertex i+1)."""
    v = poly.vertices
    n = len(v)
    angles = interior_angles(poly)
    return [((v[(i + 1) % n] - v[i]).norm2(), angles[(i + 1) % n]) for i in range(n)]


def _cyclic_variants(poly: Polygon) -> list[tuple[int, int, list[tuple[QS3, int]]]]:
    """Every (start, direction, sequence) reading of the polygon boundary."""
    v = list(poly.vertices)
    n = len(v)
    out = []
    angles = interior_angles(poly)
    fwd = [((v[(i + 1) % n] - v[i]).norm2(), angles[(i + 1) % n]) for i in range(n)]
    for s in range(n):
        out.append((s, 1, fwd[s:] + fwd[:s]))
    # backward traversal starting at vertex s: edges (s, s-1), (s-1, s-2), ...
    bwd_edges = [((v[s] - v[s - 1]).norm2(), angles[(s - 1) % n]) for s in range(n)]
    for s in range(n):
        seq = [bwd_edges[(s - i) % n] for i in range(n)]
        out.append((s, -1, seq))
    return out


def _ratio(cache: dict, x: QS3, y: QS3) -> QS3:
    r = cache.get((x, y))
    if r is None:
        r = cache[(x, y)] = x / y
    return r


def canonical_signature(poly: Polygon, mode: str = "congruence") -> tuple:
    """Canonical (edge, angle) sequence; equal iff congruent/similar.

    Mirror images are identified (both traversal directions are tried).
    """
    if mode not in ("congruence", "similarity"):
        raise ValueError(f"unknown mode {mode!r}")
    best = None
    ratios: dict[tuple[QS3, QS3], QS3] = {}  # few distinct lengths, so divide once each
    for _, _, seq in _cyclic_variants(poly):
        base = seq[0][0]
        if mode == "similarity":
            seq = [(_ratio(ratios, l2, base), k) for l2, k in seq]
        key = tuple((l2.p, l2.q, k) for l2, k in seq)
        if best is None or key < best:
            best = key
    return (mode, best)


def _orthogonal_from(e: Point, f: Point, reflected: bool) -> Isometry:
    """Orthogonal linear map sending direction ``e`` to direction ``f`` (|e| = |f|)."""
    n2 = e.norm2()
    if not reflected:
        c = e.dot(f) / n2
        s = e.cross(f) / n2
        return Isometry(c, -s, s, c, ZERO, ZERO)
    c = (e.x * f.x - e.y * f.y) / n2
    s = (e.y * f.x + e.x * f.y) / n2
    return Isometry(c, s, s, -c, ZERO, ZERO)


def similarity_between(p: Polygon, q: Polygon) -> Similarity | None:
    """Exact similarity witness mapping ``p`` onto ``q``, if one exists.

    Returns ``None`` when the polygons are not similar.  When they are
    similar but the length ratio has no square root in Q[sqrt3], the
    returned witness has ``scale is None``.
    """
    if len(p) != len(q):
        return None
    if canonical_signature(p, "similarity") != canonical_signature(q, "similarity"):
        return None
    pv, qv = list(p.vertices), list(q.vertices)
    n = len(pv)
    p_seq = _edge_angle_sequence(p)
    ratio_only: QS3 | None = None
    for s, direction, seq in _cyclic_variants(q):
        ratio = seq[0][0] / p_seq[0][0]
        if any(ql != pl * ratio or qk != pk for (ql, qk), (pl, pk) in zip(seq, p_seq)):
            continue
        k = qs3_sqrt(ratio)
        if k is None:
            ratio_only = ratio
            continue
        q0, q1 = qv[s], qv[(s + direction) % n]
        e = (pv[1] - pv[0]) * k
        f = q1 - q0
        for reflected in (False, True):
            lin = _orthogonal_from(e, f, reflected)
            shift = q0 - lin.linear(pv[0] * k)
            g = Isometry(lin.m00, lin.m01, lin.m10, lin.m11, shift.x, shift.y)
            if all(g(pv[i] * k) == qv[(s + direction * i) % n] for i in range(n)):
                return Similarity(k, g, reflected, ratio)
    if ratio_only is not None:
        return Similarity(None, None, False, ratio_only)
    return None


def convex_interiors_overlap(p: Polygon, q: Polygon) -> bool:
    """Exact separating-axis test for two convex polygons.

    Polygons touching along an edge or at a vertex do not overlap.
    """
    for poly in (p, q):
        for a, b in poly.edges():
            normal = Point(-(b - a).y, (b - a).x)
            pmin = pmax = qmin = qmax = None
            for v in p.vertices:
                t = normal.dot(v)
                pmin = t if pmin is None or t < pmin else pmin
                pmax = t if pmax is None or t > pmax else pmax
            for v in q.vertices:
                t = normal.dot(v)
                qmin = t if qmin is None or t < qmin else qmin
                qmax = t if qmax is None or t > qmax else qmax
            if pmax <= qmin or qmax <= pmin:
                return False
    return True


def polygons_from_points(points: Sequence[Sequence]) -> Polygon:
    return Polygon(Point(x, y) for x, y in points)
