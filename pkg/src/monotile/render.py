"""Deterministic SVG output for polygons, kite assemblies and patches."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .geom import Polygon, is_simple
from .kite import Assembly, boundary
from .numeric import QS3, parse_qs3
from .tilefamily import TilePolygon, build_tile

__all__ = [
    "PALETTE",
    "SceneItem",
    "Scene",
    "scene_to_svg",
    "polygon_scene",
    "assembly_scene",
    "patch_scene",
    "tile_scene",
    "animate",
    "write_svg",
]

PALETTE = (
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4",
    "#46f0f0", "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff",
)


@dataclass(frozen=True)
class SceneItem:
    polygon: Polygon
    fill: str = "none"
    stroke_width: float = 0.02
    label: str | None = None
    stroke: str = "#000000"


@dataclass
class Scene:
    items: list[SceneItem] = field(default_factory=list)
    viewbox: tuple[float, float, float, float] | None = None

    def bounds(self) -> tuple[float, float, float, float]:
        pts = [p.to_float() for it in self.items for p in it.polygon.vertices]
        xs = [x for x, _ in pts]
        ys = [y for _, y in pts]
        return min(xs), min(ys), max(xs), max(ys)

    def computed_viewbox(self) -> tuple[float, float, float, float]:
        """(min_x, min_y, width, height) in SVG coordinates (y flipped)."""
        if self.viewbox is not None:
            return self.viewbox
        x0, y0, x1, y1 = self.bounds()
        w, h = x1 - x0, y1 - y0
        m = 0.05 * max(w, h, 1e-9)
        return (x0 - m, -y1 - m, w + 2 * m, h + 2 * m)


def _num(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _path(poly: Polygon) -> str:
    pts = [p.to_float() for p in poly.vertices]
    head = f"M {_num(pts[0][0])} {_num(-pts[0][1])}"
    rest = " ".join(f"L {_num(x)} {_num(-y)}" for x, y in pts[1:])
    return f"{head} {rest} Z"


def scene_to_svg(scene: Scene) -> bytes:
    if not scene.items:
        raise ValueError("empty scene")
    vx, vy, vw, vh = scene.computed_viewbox()
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_num(vx)} {_num(vy)} {_num(vw)} {_num(vh)}" '
        f'width="{_num(400.0)}" height="{_num(400.0 * vh / vw)}">',
    ]
    for it in scene.items:
        out.append(f'  <path d="{_path(it.polygon)}" fill="{it.fill}" '
                   f'stroke="{it.stroke}" stroke-width="{_num(it.stroke_width)}" '
                   'stroke-linejoin="round"/>')
    for it in scene.items:
        if it.label is None:
            continue
        pts = [p.to_float() for p in it.polygon.vertices]
        cx = sum(x for x, _ in pts) / len(pts)
        cy = sum(y for _, y in pts) / len(pts)
        size = 0.04 * max(vw, vh)
        out.append(f'  <text x="{_num(cx)}" y="{_num(-cy)}" font-size="{_num(size)}" '
                   f'text-anchor="middle" dominant-baseline="middle">{it.label}</text>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def write_svg(scene: Scene, path: str | Path) -> Path:
    path = Path(path)
    path.write_bytes(scene_to_svg(scene))
    return path


def _stroke(polys: Iterable[Polygon]) -> float:
    pts = [p.to_float() for poly in polys for p in poly.vertices]
    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    return 0.006 * max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)


def polygon_scene(poly: Polygon, fill: str = PALETTE[3], label: str | None = None) -> Scene:
    return Scene([SceneItem(poly, fill, _stroke([poly]), label)])


def tile_scene(tile: TilePolygon) -> Scene:
    poly = tile.normalized
    return Scene([SceneItem(poly, PALETTE[3], _stroke([poly]))])


def assembly_scene(asm: Assembly, labels: bool = False) -> Scene:
    """Kites cycling through the palette, then the outline in black."""
    polys = [k.polygon for k in asm.kites]
    w = _stroke(polys)
    items = [SceneItem(p, PALETTE[i % len(PALETTE)], w, str(i) if labels else None)
             for i, p in enumerate(polys)]
    items.append(SceneItem(boundary(asm), "none", 3 * w))
    return Scene(items)


def patch_scene(base: Sequence[Polygon], overlay: Sequence[Polygon] = ()) -> Scene:
    """Base faces colored by size, overlay (e.g. dual faces) outlined on top."""
    all_polys = list(base) + list(overlay)
    w = _stroke(all_polys)
    fills = {3: PALETTE[2], 4: PALETTE[3], 6: PALETTE[1]}
    items = [SceneItem(p, fills.get(len(p), PALETTE[9]), w) for p in base]
    items += [SceneItem(p, "none", 2 * w, stroke="#d00000") for p in overlay]
    return Scene(items)


def _as_qs3(v) -> QS3:
    return parse_qs3(v) if isinstance(v, str) else QS3.coerce(v)


def animate(a_from="1/1000", a_to="999/1000", frames: int = 20,
            out_dir: str | Path = "frames") -> list[str]:
    """Write ``frame_000.svg`` ... for evenly spaced parameters, exact in a.

    All frames share one viewbox.  Every frame polygon is checked to be
    simple before it is written.
    """
    a0, a1 = _as_qs3(a_from), _as_qs3(a_to)
    if not (a0.sign() >= 0 and (a1 - a0).sign() > 0 and (a1 - 1).sign() <= 0):
        raise ValueError(f"need 0 <= a_from < a_to <= 1, got {a0}, {a1}")
    if frames < 2:
        raise ValueError("need at least two frames")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    step = (a1 - a0) * Fraction(1, frames - 1)
    tiles = [build_tile(a0 + step * i) for i in range(frames)]
    for i, t in enumerate(tiles):
        if not is_simple(t.normalized):
            raise ValueError(f"frame {i}: Tile({t.a}) is not simple")
    union = Scene([SceneItem(t.normalized) for t in tiles])
    viewbox = union.computed_viewbox()
    width = 0.006 * max(viewbox[2], viewbox[3])
    names = []
    for i, t in enumerate(tiles):
        name = f"frame_{i:03d}.svg"
        scene = Scene([SceneItem(t.normalized, PALETTE[3], width)], viewbox)
        (out / name).write_bytes(scene_to_svg(scene))
        names.append(name)
    return names
