"""The fourteen-edge boundary of Tile(a, 1-a), built by ruler-and-compass replay.

Starting from ``A = (0, 0)`` and ``B = (a, 0)`` the boundary is traced edge
by edge.  Every step is either a 120 degree turn (a rotation of the
previous vertex about the current one) or a perpendicular/parallel line
intersected with a circle.  The latter has two admissible intersection
points; which one is meant is recorded in a :class:`SignTable`.

All headings are multiples of 30 degrees and are tracked as integers, so
the same trace works at the degenerate parameters ``a = 0`` and ``a = 1``
where some edges have zero length.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .geom import (
    GeometryError,
    Isometry,
    Point,
    Polygon,
    interior_angles,
    is_simple,
    normalize_polygon,
    point_along,
    scale_polygon,
    shoelace_area,
    similarity_between,
    unit,
)
from .numeric import ONE, QS3, ZERO, parse_qs3

__all__ = [
    "LABELS",
    "SIGN_STEPS",
    "A_EDGES",
    "B_EDGES",
    "NAMED_PARAMS",
    "SignTable",
    "TilePolygon",
    "build_tile",
    "trace",
    "derive_sign_table",
    "canonical_sign_table",
    "load_sign_table",
    "format_sign_table",
    "named_tile",
    "verify_prop2",
]

LABELS = "ABCDEFGHIJKLMN"
SIGN_STEPS = ("D", "F", "G", "H", "J", "L")

# raw edges named by their start vertex: "A" is AB, ..., "N" is NA
A_EDGES = ("A", "B", "C", "F", "G", "J", "K", "N")
B_EDGES = ("D", "E", "H", "I", "L", "M")

NAMED_PARAMS = {
    "hat": "(sqrt3-1)/2",
    "turtle": "(3-sqrt3)/2",
    "t01": "0",
    "t11": "1/2",
    "t10": "1",
}


@dataclass(frozen=True)
class SignTable:
    """Choice of intersection point at each ambiguous step.

    ``+1`` takes the counter-clockwise perpendicular (or, for the parallel
    step at G, the direction of AB); ``-1`` takes the other point.
    """

    D: int
    F: int
    G: int
    H: int
    J: int
    L: int

    def __getitem__(self, label: str) -> int:
        return getattr(self, label)

    def flipped(self, label: str) -> "SignTable":
        values = {s: self[s] for s in SIGN_STEPS}
        values[label] = -values[label]
        return SignTable(**values)


@dataclass(frozen=True)
class TilePolygon:
    raw: Polygon
    normalized: Polygon
    a: QS3

    @property
    def b(self) -> QS3:
        return ONE - self.a

    def vertex(self, label: str) -> Point:
        return self.raw[LABELS.index(label)]


def trace(a: QS3, signs: SignTable) -> tuple[list[Point], list[int]]:
    """Vertices A..N and the headings (units of 30 deg) of edges A->B .. M->N.

    The closing edge N->A is not traced; callers check that it has length a.
    """
    a = QS3.coerce(a)
    b = ONE - a
    pts = [Point(0, 0)]
    heads: list[int] = []

    def step(h: int, length: QS3):
        heads.append(h % 12)
        pts.append(point_along(pts[-1], unit(h), length))

    step(0, a)                        # B
    step(0, a)                        # C: ray AB meets circle(B, a)
    # D: B rotated -120 deg about C, heading of CB is h+6
    step(heads[-1] + 6 - 4, a)
    step(heads[-1] + 3 * signs.D, b)  # E: perpendicular to CD through D
    step(heads[-1] + 6 - 4, b)        # F: D rotated -120 deg about E
    step(heads[-1] + 3 * signs.F, a)  # G: perpendicular to EF through F
    step(0 if signs.G > 0 else 6, a)  # H: parallel to AB through G
    step(heads[-1] + 3 * signs.H, b)  # I: perpendicular to GH through H
    step(heads[-1] + 6 - 4, b)        # J: H rotated -120 deg about I
    step(heads[-1] + 3 * signs.J, a)  # K: perpendicular to IJ through J
    step(heads[-1] + 6 + 4, a)        # L: J rotated +120 deg about K
    step(heads[-1] + 3 * signs.L, b)  # M: perpendicular to KL through L
    step(heads[-1] + 6 + 4, b)        # N: L rotated +120 deg about M
    return pts, heads


def _closure_ok(a: QS3, signs: SignTable) -> bool:
    pts, _ = trace(a, signs)
    return (pts[-1] - pts[0]).norm2() == a * a


def derive_sign_table() -> list[SignTable]:
    """All sign tables whose trace closes (|NA| = a) at a = 1/3 and a = 1/2
    and whose 14-gon is simple at a = 37/100, positive-area ones first.
    """
    probes = (QS3(Fraction(1, 3)), QS3(Fraction(1, 2)))
    check = QS3(Fraction(37, 100))
    survivors = []
    for combo in itertools.product((1, -1), repeat=len(SIGN_STEPS)):
        signs = SignTable(*combo)
        if not all(_closure_ok(a, signs) for a in probes):
            continue
        poly = Polygon(trace(check, signs)[0])
        if is_simple(poly):
            survivors.append((-shoelace_area(poly).sign(), combo, signs))
    if not survivors:
        raise RuntimeError("no sign table closes the construction")
    survivors.sort(key=lambda t: (t[0], t[1]))
    return [s for _, _, s in survivors]


def format_sign_table(signs: SignTable) -> str:
    return "".join(f"{s} {'+' if signs[s] > 0 else '-'}\n" for s in SIGN_STEPS)


def parse_sign_table(text: str) -> SignTable:
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] not in SIGN_STEPS or parts[1] not in "+-":
            raise ValueError(f"bad sign table line {lineno}: {line!r}")
        values[parts[0]] = 1 if parts[1] == "+" else -1
    missing = set(SIGN_STEPS) - set(values)
    if missing:
        raise ValueError(f"sign table missing steps {sorted(missing)}")
    return SignTable(**values)


def load_sign_table() -> SignTable:
    """The frozen sign table shipped with the package."""
    text = resources.files("monotile").joinpath("data/signs.txt").read_text()
    return parse_sign_table(text)


def canonical_sign_table() -> SignTable:
    return load_sign_table()


def _as_param(a) -> QS3:
    if isinstance(a, str):
        a = parse_qs3(a)
    a = QS3.coerce(a)
    if a.sign() < 0 or (a - ONE).sign() > 0:
        raise ValueError(f"tile parameter {a} outside [0, 1]")
    return a


def build_tile(a, signs: SignTable | None = None) -> TilePolygon:
    """Tile(a, 1-a): raw 14-gon A..N plus its normalized form."""
    a = _as_param(a)
    signs = signs or load_sign_table()
    pts, _ = trace(a, signs)
    if (pts[-1] - pts[0]).norm2() != a * a:
        raise GeometryError(f"construction does not close at a = {a}")
    raw = Polygon(pts)
    return TilePolygon(raw, normalize_polygon(raw), a)


def named_tile(name: str) -> TilePolygon:
    try:
        expr = NAMED_PARAMS[name]
    except KeyError:
        raise ValueError(f"unknown tile {name!r}; expected one of {sorted(NAMED_PARAMS)}") from None
    return build_tile(parse_qs3(expr))


def raw_edge_lengths2(tile: TilePolygon) -> dict[str, QS3]:
    return {LABELS[i]: (q - p).norm2() for i, (p, q) in enumerate(tile.raw.edges())}


def raw_angle_sum(tile: TilePolygon) -> int:
    """Sum of raw interior angles in degrees (straight angle at B included)."""
    return 30 * sum(interior_angles(tile.raw))


def verify_prop2(tile: TilePolygon, k) -> bool:
    """Check that uniformly scaling the tile by ``k`` gives a similar polygon
    with exact ratio ``k``."""
    k = QS3.coerce(k)
    if k.sign() <= 0:
        raise ValueError("scale factor must be positive")
    p = tile.normalized
    w = similarity_between(p, scale_polygon(p, k))
    return w is not None and w.exact and w.scale == k
