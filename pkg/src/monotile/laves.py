"""Finite patches of the (3^6) and (3.4.6.4) tessellations and their Laves duals.

The dual has one face per interior vertex of the base patch, whose corners
are the centers of the faces around that vertex.  Centers are vertex
averages, which is exact for the regular polygons used here.
"""

from __future__ import annotations

import functools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .geom import Point, Polygon, interior_angles, normalize_polygon, unit
from .numeric import QS3, SQRT3

__all__ = [
    "Patch",
    "DualPatch",
    "triangular_patch",
    "patch_3464",
    "dual",
    "centroid",
]


@dataclass
class Patch:
    faces: list[Polygon]
    adjacency: list[tuple[int, int]] = field(default_factory=list)
    vertices: dict[Point, list[int]] = field(default_factory=dict)

    def angle_sum(self, v: Point) -> int:
        """Sum of incident interior angles at ``v`` in units of 30 degrees."""
        total = 0
        for fi in self.vertices[v]:
            face = self.faces[fi]
            total += interior_angles(face)[face.vertices.index(v)]
        return total

    def interior_vertices(self) -> list[Point]:
        return sorted((v for v in self.vertices if self.angle_sum(v) == 12), key=Point.key)

    def fan(self, v: Point) -> list[int]:
        """Incident faces of ``v`` in counter-clockwise order."""
        return sorted(self.vertices[v], key=functools.cmp_to_key(
            lambda i, j: _angle_cmp(centroid(self.faces[i]) - v, centroid(self.faces[j]) - v)))


@dataclass
class DualPatch:
    faces: list[Polygon]
    centers: list[Point] = field(default_factory=list)


def centroid(poly: Polygon) -> Point:
    n = len(poly)
    sx = sum((p.x for p in poly.vertices), QS3(0))
    sy = sum((p.y for p in poly.vertices), QS3(0))
    return Point(sx / n, sy / n)


def _half(v: Point) -> int:
    # 0 for angles in [0, 180), 1 for [180, 360)
    s = v.y.sign()
    return 0 if s > 0 or (s == 0 and v.x.sign() > 0) else 1


def _angle_cmp(u: Point, v: Point) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    return -u.cross(v).sign()


def _build(faces: list[Polygon]) -> Patch:
    unique: dict[frozenset, Polygon] = {}
    for f in faces:
        unique.setdefault(frozenset(f.vertices), normalize_polygon(f))
    ordered = sorted(unique.values(), key=lambda f: centroid(f).key())
    vertices: dict[Point, list[int]] = defaultdict(list)
    edge_faces: dict[frozenset, list[int]] = defaultdict(list)
    for i, f in enumerate(ordered):
        for p in f.vertices:
            vertices[p].append(i)
        for p, q in f.edges():
            edge_faces[frozenset((p, q))].append(i)
    adjacency = sorted(tuple(fs) for fs in edge_faces.values() if len(fs) == 2)
    return Patch(ordered, adjacency, dict(vertices))


def _check_radius(radius: int, hi: int) -> None:
    if not isinstance(radius, int) or not 1 <= radius <= hi:
        raise ValueError(f"radius must be an integer in [1, {hi}], got {radius!r}")


def _lattice(i: int, j: int, spacing) -> Point:
    e1, e2 = unit(0), unit(2)
    return (e1 * i + e2 * j) * spacing


def _hex_cells(radius: int):
    for i in range(-radius, radius + 1):
        for j in range(-radius, radius + 1):
            if max(abs(i), abs(j), abs(i + j)) <= radius:
                yield i, j


def triangular_patch(radius: int) -> Patch:
    """Unit triangles of the regular triangular tiling around the origin."""
    _check_radius(radius, 6)
    faces = []
    for i, j in _hex_cells(radius):
        p = _lattice(i, j, 1)
        q = _lattice(i + 1, j, 1)
        r = _lattice(i, j + 1, 1)
        s = _lattice(i + 1, j + 1, 1)
        faces.append(Polygon((p, q, r)))
        faces.append(Polygon((q, s, r)))
    return _build(faces)


def patch_3464(radius: int) -> Patch:
    """Rhombitrihexagonal patch: unit hexagons on a lattice of spacing 1 + sqrt3,
    a square on every hexagon edge and a triangle at every hexagon corner.
    """
    _check_radius(radius, 4)
    spacing = 1 + SQRT3
    # pointy-top hexagon centered at (0, -1) has its top corner at the origin
    base = Point(0, -1)
    faces = []
    for i, j in _hex_cells(radius):
        c = base + _lattice(i, j, spacing)
        corners = [c + unit(1 + 2 * k) for k in range(6)]
        faces.append(Polygon(corners))
        for k in range(6):
            p, q = corners[k], corners[(k + 1) % 6]
            out = unit(2 * k + 2)  # outward normal of edge k
            faces.append(Polygon((p, p + out, q + out, q)))
            # triangle beyond corner k, between the squares on edges k-1 and k
            v = corners[k]
            faces.append(Polygon((v, v + unit(2 * k), v + unit(2 * k + 2))))
    return _build(faces)


def dual(patch: Patch) -> DualPatch:
    """One face per interior vertex, joining the centers of its fan."""
    interior = patch.interior_vertices()
    if not interior:
        raise ValueError("patch has no interior vertex")
    faces = []
    for v in interior:
        faces.append(Polygon(centroid(patch.faces[i]) for i in patch.fan(v)))
    return DualPatch(faces, interior)
