"""Command-line front end.  Every subcommand only wires arguments to library calls."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .geom import canonical_signature, normalize_polygon, shoelace_area, similarity_between
from .kite import (
    SearchLimitExceeded,
    assemble,
    boundary,
    format_spec,
    laves_kite,
    parse_spec,
    search_assembly,
)
from .laves import dual, patch_3464, triangular_patch
from .numeric import QS3, ParseError, parse_qs3, qs3_to_float
from .render import animate, assembly_scene, patch_scene, tile_scene, write_svg
from .tilefamily import A_EDGES, B_EDGES, NAMED_PARAMS, build_tile, named_tile, raw_angle_sum, raw_edge_lengths2
from .verify import SUITES

__all__ = ["run", "main", "build_parser", "tile_report", "display"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def display(x: QS3, digits: int = 6) -> str:
    """Float rendering used in reports; two digits reproduces the familiar 0.37."""
    return f"{qs3_to_float(x):.{digits}f}"


def _line(key: str, value: QS3, digits: int = 6) -> str:
    return f"{key}: {value} (≈ {display(value, digits)})"


def tile_report(tile) -> list[str]:
    """Report lines for a tile; the CLI prints exactly these."""
    lengths = raw_edge_lengths2(tile)
    a2, b2 = tile.a * tile.a, tile.b * tile.b
    edges_ok = all(lengths[e] == a2 for e in A_EDGES) and all(lengths[e] == b2 for e in B_EDGES)
    return [
        _line("a", tile.a, 2),
        _line("b", tile.b, 2),
        "edges: " + ("8×a + 6×(1−a)" if edges_ok else "mismatch"),
        f"raw vertices: {len(tile.raw)}",
        f"normalized edges: {len(tile.normalized)}",
        f"angle sum: {raw_angle_sum(tile)}°",
        _line("area", shoelace_area(tile.normalized)),
    ]


def _qs3_arg(text: str) -> QS3:
    try:
        return parse_qs3(text)
    except ParseError as exc:
        raise UsageError(f"cannot parse {text!r} at position {exc.pos}: {exc}") from None
    except ZeroDivisionError:
        raise UsageError(f"division by zero in {text!r}") from None


def _cmd_tile(args) -> int:
    tile = named_tile(args.name) if args.name else build_tile(_qs3_arg(args.a))
    if args.report or not args.svg:
        print("\n".join(tile_report(tile)))
    if args.svg:
        write_svg(tile_scene(tile), args.svg)
    return EXIT_OK


def _read_spec(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_spec(text)


def _cmd_kite_assemble(args) -> int:
    asm = assemble(_read_spec(args.spec))
    outline = normalize_polygon(boundary(asm))
    print(f"kites: {len(asm)}")
    print(_line("area", shoelace_area(outline)))
    print(f"outline edges: {len(outline)}")
    for name in NAMED_PARAMS:
        w = similarity_between(named_tile(name).normalized, outline)
        if w is not None and w.exact:
            print(_line(f"similar to {name}, scale", w.scale))
    if args.svg:
        write_svg(assembly_scene(asm), args.svg)
    return EXIT_OK


def _cmd_kite_search(args) -> int:
    target = named_tile(args.target).normalized
    if args.exhaustive:
        target = canonical_signature(target, "similarity")
    found = search_assembly(target, args.n, limit=args.limit)
    if not found:
        print(f"no {args.n}-kite assembly matches {args.target}", file=sys.stderr)
        return EXIT_FAIL
    header = {"target": args.target, "kites": str(args.n), "matches": str(len(found))}
    shown = found if args.all else found[:1]
    sys.stdout.write("\n".join(format_spec(s, header) for s in shown))
    return EXIT_OK


def _cmd_laves(args) -> int:
    base = triangular_patch(args.radius) if args.base == "tri" else patch_3464(args.radius)
    print(f"base faces: {len(base.faces)}")
    print(f"interior vertices: {len(base.interior_vertices())}")
    overlay = []
    if args.dual:
        d = dual(base)
        overlay = d.faces
        print(f"dual faces: {len(d.faces)}")
        if args.base == "3464":
            kite = laves_kite().polygon
            scales = {str(w.scale) for w in (similarity_between(kite, f) for f in d.faces)
                      if w is not None and w.exact}
            print("dual face scale vs Laves kite: " + (", ".join(sorted(scales)) or "none"))
    if args.svg:
        write_svg(patch_scene(base.faces, overlay), args.svg)
    return EXIT_OK


def _cmd_verify(args) -> int:
    chosen = [name for name in SUITES if args.all or getattr(args, name)]
    if not chosen:
        raise UsageError("verify needs --all or at least one suite flag")
    failed = 0
    for name in chosen:
        for check in SUITES[name]():
            print(check.line())
            failed += not check.ok
    print(f"{failed} failed")
    return EXIT_FAIL if failed else EXIT_OK


def _cmd_anim(args) -> int:
    a0, a1 = _qs3_arg(args.a_from), _qs3_arg(args.a_to)
    names = animate(a0, a1, args.frames, args.out)
    print(f"wrote {len(names)} frames to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monotile", description="Exact hat/turtle tile constructions.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tile", help="build a parametric or named tile")
    which = t.add_mutually_exclusive_group(required=True)
    which.add_argument("--a", help="parameter, e.g. '(sqrt3-1)/2'")
    which.add_argument("--name", choices=sorted(NAMED_PARAMS))
    t.add_argument("--svg", type=Path)
    t.add_argument("--report", action="store_true")
    t.set_defaults(func=_cmd_tile)

    k = sub.add_parser("kite", help="kite assemblies")
    ksub = k.add_subparsers(dest="kite_command", required=True)
    ka = ksub.add_parser("assemble", help="replay a reflection spec ('-' reads stdin)")
    ka.add_argument("--spec", required=True)
    ka.add_argument("--svg", type=Path)
    ka.set_defaults(func=_cmd_kite_assemble)
    ks = ksub.add_parser("search", help="search reflection specs matching a named tile")
    ks.add_argument("--target", required=True, choices=sorted(NAMED_PARAMS))
    ks.add_argument("--n", type=int, required=True)
    ks.add_argument("--limit", type=int, default=10**6)
    ks.add_argument("--exhaustive", action="store_true",
                    help="search by signature only, without region pruning")
    ks.add_argument("--all", action="store_true", help="print every match")
    ks.set_defaults(func=_cmd_kite_search)

    lv = sub.add_parser("laves", help="regular patches and their duals")
    lv.add_argument("--base", required=True, choices=("tri", "3464"))
    lv.add_argument("--radius", type=int, required=True)
    lv.add_argument("--dual", action="store_true")
    lv.add_argument("--svg", type=Path)
    lv.set_defaults(func=_cmd_laves)

    v = sub.add_parser("verify", help="run invariant suites")
    v.add_argument("--all", action="store_true")
    for name in SUITES:
        v.add_argument(f"--{name}", action="store_true")
    v.set_defaults(func=_cmd_verify)

    an = sub.add_parser("anim", help="write SVG frames while a varies")
    an.add_argument("--from", dest="a_from", default="1/1000")
    an.add_argument("--to", dest="a_to", default="999/1000")
    an.add_argument("--frames", type=int, default=20)
    an.add_argument("--out", type=Path, default=Path("frames"))
    an.set_defaults(func=_cmd_anim)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        # covers AssemblyError, GeometryError and out-of-range parameters
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SearchLimitExceeded as exc:
        print(f"search limit: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())

