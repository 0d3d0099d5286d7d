"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from math import isqrt
from pathlib import Path

from . import __version__
from .drawing import (DrawingError, NotA4ConnectedTriangulation, NotPlanarLattice, dominance_drawing_of,
                      draw_graph, draw_lattice_few_lines)
from .drawing_types import Drawing
from .gk import (canonical_orthogonal_pair, canonicalize_antichains, ferrers_shape, interior_weights,
                 min_sum_boundary_point, orthogonal_pair)
from .graph import (GraphError, GenerationFailed, PlaneGraph, generate_instance, generate_triangulation,
                    is_4connected_triangulation, validate)
from .poset import Poset, compute_realizer, poset_from_st_graph
from .render import render_svg
from .transversal import RED, TransversalError, color_subgraph, compute_transversal_structure
from .verify import verify_drawing

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_graph(path: str) -> PlaneGraph:
    d = _read_json(path)
    if "rotation" not in d:
        raise UsageError(f"{path} is not a graph JSON (no 'rotation')")
    try:
        return PlaneGraph.from_dict(d)
    except (GraphError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed graph {path}: {exc}") from exc


def _red_poset(g: PlaneGraph):
    ts = compute_transversal_structure(g)
    red = color_subgraph(g, ts, RED)
    p = poset_from_st_graph(red)
    return p, compute_realizer(red, p)


def _load_poset(path: str):
    d = _read_json(path)
    if "rotation" in d:
        return _red_poset(PlaneGraph.from_dict(d))
    if "elements" not in d:
        raise UsageError(f"{path} is neither a poset nor a graph JSON")
    return Poset.from_dict(d)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    g = _load_graph(args.graph)
    if len(g.outer_face) == 3:
        bad = is_4connected_triangulation(g)
        report = {"kind": "triangulation", "valid": not bad, "violations": [list(map(str, v)) for v in bad]}
    else:
        rep = validate(g)
        report = {"kind": "4-gon", "valid": bool(rep), "violations": [list(map(str, v)) for v in rep.violations]}
    _emit(json.dumps(report, indent=1), args.out)
    return EXIT_OK if report["valid"] else EXIT_FAIL


def cmd_color(args) -> int:
    g = _load_graph(args.graph)
    ts = compute_transversal_structure(g)
    _emit(ts.to_json(), args.out)
    return EXIT_OK


def cmd_poset(args) -> int:
    g = _load_graph(args.graph)
    p, r = _red_poset(g)
    _emit(p.to_json(r), args.out)
    if args.grid:
        grid = dominance_drawing_of(p, r)
        Path(args.grid).write_text(json.dumps({x: [int(a), int(b)] for x, (a, b) in sorted(grid.points.items())},
                                              indent=1) + "\n")
    return EXIT_OK


def cmd_gk(args) -> int:
    p, r = _load_poset(args.poset)
    shape = ferrers_shape(p)
    k, l = min_sum_boundary_point(shape)
    if r is not None:
        w = interior_weights(p, r) if l else None
        pair = canonical_orthogonal_pair(p, r, k, l, w)
    else:
        pair = canonicalize_antichains(p, orthogonal_pair(p, k, l))
    out = {"shape": list(shape.rows), "partition": str(shape), "boundary_point": [k, l], "pair": pair.to_dict()}
    _emit(json.dumps(out, indent=1), args.out)
    return EXIT_OK


def _write_drawing(d: Drawing, args) -> None:
    _emit(d.to_json(), args.out)
    if args.svg:
        Path(args.svg).write_text(render_svg(d, width=args.svg_width))


def cmd_draw(args) -> int:
    g = _load_graph(args.graph)
    try:
        lay = draw_graph(g)
    except (NotA4ConnectedTriangulation, GraphError, TransversalError) as exc:
        raise UsageError(str(exc)) from exc
    d = lay.drawing
    if args.keep_intermediate:
        root = Path(args.keep_intermediate)
        root.mkdir(parents=True, exist_ok=True)
        (root / "transversal.json").write_text(lay.structure.to_json() + "\n")
        (root / "poset.json").write_text(lay.poset.to_json(lay.realizer) + "\n")
        (root / "pair.json").write_text(lay.pair.to_json() + "\n")
    _write_drawing(d, args)
    full = getattr(lay, "triangulation", None) or g
    arcs = [e for e, c in d.edge_colors.items() if c == RED]
    rep = verify_drawing(d, full.edges(), arcs, full.n)
    sys.stderr.write(rep.to_json() + "\n")
    return EXIT_OK if rep else EXIT_FAIL


def cmd_draw_lattice(args) -> int:
    p, r = _load_poset(args.poset)
    if r is None:
        raise UsageError("draw-lattice needs a poset with a realizer")
    try:
        lay = draw_lattice_few_lines(p, r)
    except NotPlanarLattice as exc:
        raise UsageError(str(exc)) from exc
    _write_drawing(lay.drawing, args)
    rep = verify_drawing(lay.drawing, p.covers(), p.covers(), p.n)
    sys.stderr.write(rep.to_json() + "\n")
    return EXIT_OK if rep else EXIT_FAIL


def cmd_verify(args) -> int:
    try:
        d = Drawing.from_dict(_read_json(args.drawing))
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"malformed drawing: {exc}") from exc
    src = _read_json(args.graph)
    if "rotation" in src:
        g = PlaneGraph.from_dict(src)
        edges, n = g.edges(), g.n
        arcs = [e for e, c in d.edge_colors.items() if c == RED]
    elif "elements" in src:
        p, _ = Poset.from_dict(src)
        edges = arcs = p.covers()
        n = p.n
    else:
        raise UsageError(f"{args.graph} is neither a graph nor a poset JSON")
    if any(v not in d.points for e in edges for v in e):
        raise UsageError("the drawing misses vertices of the graph")
    rep = verify_drawing(d, edges, arcs, n)
    _emit(rep.to_json(), args.out)
    return EXIT_OK if rep else EXIT_FAIL


def cmd_render(args) -> int:
    d = Drawing.from_dict(_read_json(args.drawing))
    _emit(render_svg(d, width=args.svg_width), args.out)
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        if args.kind == "triangulation":
            g = generate_triangulation(args.n, seed=args.seed)
        else:
            g = generate_instance(args.n, seed=args.seed)
    except (GraphError, GenerationFailed) as exc:
        raise UsageError(str(exc)) from exc
    _emit(g.to_json(), args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    rows = []
    status = EXIT_OK
    for n in sizes:
        for k in range(args.repeats):
            g = generate_triangulation(n, seed=args.seed + k)
            t0 = time.perf_counter()
            lay = draw_graph(g)
            dt = time.perf_counter() - t0
            d = lay.drawing
            ok = bool(verify_drawing(d, g.edges(), [e for e, c in d.edge_colors.items() if c == RED], n))
            status = status if ok else EXIT_FAIL
            rows.append({"n": n, "seed": args.seed + k, "lines": d.total_lines, "floor_sqrt_2n": isqrt(2 * n),
                         "k": len(d.horizontal), "l": len(d.vertical), "verified": ok, "seconds": round(dt, 3)})
            if not args.quiet:
                sys.stderr.write(f"n={n:5d} seed={args.seed + k:3d} lines={d.total_lines:3d} "
                                 f"floor(sqrt(2n))={isqrt(2 * n):3d} ok={ok} {dt:7.2f}s\n")
    _emit(json.dumps(rows, indent=1), args.out)
    return status


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fewlines", description="Straight-line drawings on few lines.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--out", "-o", help="output file (default: stdout)")
        sp.add_argument("--seed", type=int, default=0)
        return sp

    sp = add("validate", cmd_validate, "check a graph JSON")
    sp.add_argument("graph")
    sp = add("color", cmd_color, "transversal structure of a 4-gon triangulation")
    sp.add_argument("graph")
    sp = add("poset", cmd_poset, "red poset with realizer")
    sp.add_argument("graph")
    sp.add_argument("--grid", help="also write the dominance grid drawing here")
    sp = add("gk", cmd_gk, "Ferrers shape, boundary point and orthogonal pair")
    sp.add_argument("poset", help="poset JSON or graph JSON")
    for name, func, what in (("draw", cmd_draw, "graph"), ("draw-lattice", cmd_draw_lattice, "poset")):
        sp = add(name, func, f"few-lines drawing of a {what}")
        sp.add_argument(what)
        sp.add_argument("--svg", help="also write an SVG rendering")
        sp.add_argument("--svg-width", type=int, default=600)
        if name == "draw":
            sp.add_argument("--keep-intermediate", metavar="DIR",
                            help="write transversal, poset and pair JSON into DIR")
    sp = add("verify", cmd_verify, "check a drawing against its graph or poset")
    sp.add_argument("drawing")
    sp.add_argument("graph")
    sp = add("render", cmd_render, "SVG from a drawing JSON")
    sp.add_argument("drawing")
    sp.add_argument("--svg-width", type=int, default=600)
    sp = add("generate", cmd_generate, "random instance")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--kind", choices=("triangulation", "4-gon"), default="triangulation")
    sp = add("bench", cmd_bench, "size sweep of the triangulation pipeline")
    sp.add_argument("--sizes", default="20,50,100,200")
    sp.add_argument("--repeats", type=int, default=1)
    sp.add_argument("--quiet", action="store_true")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"fewlines: error: {exc}\n")
        return EXIT_USAGE
    except DrawingError as exc:
        sys.stderr.write(f"fewlines: drawing failed: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
