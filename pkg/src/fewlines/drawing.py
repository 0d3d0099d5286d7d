"""Few-lines drawings of planar lattices, transversal structures and triangulations.

Two placement engines are used.

* The cone construction (:func:`draw_prescribed_heights`) places the chains
  of the canonical chain partition one after the other on vertical lines,
  far enough to the right that every new edge leaves the current right
  boundary inside an empty cone.
* The level-order layout (:func:`level_layout`) fixes every y-coordinate
  and all vertical alignments, then chooses x-coordinates by a linear
  program: at every height the vertices and crossing edges must appear in
  their planar left-to-right order, separated by at least one unit.  The LP
  runs in floating point.  Its rounded solution is certified exactly; when
  rounding fails (widths can grow exponentially), the vertex spanned by the
  active constraints is recomputed in rational arithmetic.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import coo_matrix
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .digraph import DirectedPlaneGraph, from_orders, from_plane_graph, left_first_order
from .drawing_types import Drawing
from .gk import (FerrersShape, OrthogonalPair, canonical_orthogonal_pair, ferrers_shape,
                 interior_weights, min_sum_boundary_point)
from .graph import (PlaneGraph, add_st_edge, delete_outer_edge, is_4connected_triangulation)
from .poset import (Poset, Realizer, canonical_chain_partition, chain_cover_plus, compute_realizer,
                    is_lattice, poset_from_st_graph, verify_realizer)
from .transversal import (BLUE, RED, TransversalStructure, color_subgraph,
                          compute_transversal_structure, outer_labels)
from .verify import bound_holds, verify_drawing

F = Fraction


class DrawingError(RuntimeError):
    pass


class NotCanonical(DrawingError):
    pass


class LayoutInfeasible(DrawingError):
    pass


class InternalError(DrawingError):
    pass


class NotPlanarLattice(ValueError):
    pass


class NotA4ConnectedTriangulation(ValueError):
    pass


# ---------------------------------------------------------------------------
# Heights
# ---------------------------------------------------------------------------


def extend_heights(p: Poset, antichains: Sequence[Iterable[str]], aux_extension: Sequence[str],
                   spacing: str = "rank") -> dict[str, Fraction]:
    """Strict extension with ``h = i`` on the ``i``-th antichain (1-based).

    An element outside all antichains sits in the band above ``base``, the
    largest index of an antichain meeting its down-set.  With
    ``spacing="rank"`` it gets ``base + rank / (n + 1)``, ``rank`` being its
    1-based position in ``aux_extension``.  With ``spacing="chain"`` it gets
    ``base + d / (d + u)``, where ``d`` and ``u`` are the longest chains of
    its band ending and starting at it; this spreads each band evenly and
    keeps the layout LP far better conditioned.
    """
    if spacing not in ("rank", "chain"):
        raise ValueError("spacing must be 'rank' or 'chain'")
    n = p.n
    level: dict[str, int] = {}
    for i, a in enumerate(antichains, start=1):
        for x in a:
            level[x] = i
    down = p.down_bits()
    base: dict[str, int] = {}
    for x in p.elements:
        if x not in level:
            base[x] = max(level.get(p.elements[j], 0) for j in [p.index[x], *_bits_of(down[p.index[x]])])
    h: dict[str, Fraction] = {x: F(i) for x, i in level.items()}
    if spacing == "rank":
        rank = {x: i for i, x in enumerate(aux_extension, start=1)}
        for x, b in base.items():
            h[x] = b + F(rank[x], n + 1)
    else:
        band = [x for x in aux_extension if x in base]
        below: dict[str, int] = {}
        above: dict[str, int] = {}
        for x in band:
            below[x] = 1 + max((below[y] for y in p.from_bits(down[p.index[x]])
                                if base.get(y) == base[x]), default=0)
        for x in reversed(band):
            above[x] = 1 + max((above[y] for y in p.from_bits(p.up[p.index[x]])
                                if base.get(y) == base[x]), default=0)
        for x in band:
            h[x] = base[x] + F(below[x], below[x] + above[x])
    for i, b in enumerate(p.up):
        x = p.elements[i]
        for j in _bits_of(b):
            if not h[x] < h[p.elements[j]]:
                raise NotCanonical(f"h is not strict on {x!r} < {p.elements[j]!r}")
    return h


def _bits_of(b: int):
    while b:
        low = b & -b
        yield low.bit_length() - 1
        b ^= low


# ---------------------------------------------------------------------------
# Cone construction
# ---------------------------------------------------------------------------


def _cone_positions(p: Poset, r: Realizer, h: Mapping[str, Fraction],
                    edges: Sequence[tuple[str, str]]) -> tuple[dict[str, tuple[Fraction, Fraction]], list[list[str]]]:
    chains = canonical_chain_partition(p, r)
    plus = chain_cover_plus(p, chains)
    incident: dict[str, list[str]] = {x: [] for x in p.elements}
    for u, v in edges:
        incident[u].append(v)
        incident[v].append(u)
    pos: dict[str, tuple[Fraction, Fraction]] = {}
    for i, chain in enumerate(chains):
        if i == 0:
            X = F(0)
        else:
            gamma = plus[i - 1]
            gset = set(gamma)
            gpts = [pos[w] for w in gamma]
            X = max(x for x, _ in pos.values()) + 1
            for q in chain:
                for w in incident[q]:
                    if w not in pos:
                        continue
                    if w not in gset:
                        raise InternalError(f"edge {w!r}-{q!r} does not start on the right boundary")
                    xp, yp = pos[w]
                    dy = abs(h[q] - yp)
                    if not dy:
                        continue
                    sigma = F(1)
                    for xw, yw in gpts:
                        if xw > xp and yw != yp:
                            sigma = min(sigma, abs(yw - yp) / (xw - xp))
                    X = max(X, xp + 2 * dy / sigma)
        for c in chain:
            pos[c] = (X, F(h[c]))
    return pos, chains


def draw_prescribed_heights(p: Poset, r: Realizer, h: Mapping[str, Fraction], align: str = "left",
                            edges: Sequence[tuple[str, str]] | None = None,
                            check_lattice: bool = True) -> Drawing:
    """Crossing-free diagram with ``y = h`` and one boundary chain on a vertical line.

    ``edges`` defaults to the cover pairs; extra edges (the blue edges of a
    transversal structure) may be passed in as well.
    """
    if align not in ("left", "right"):
        raise ValueError("align must be 'left' or 'right'")
    if check_lattice and (not verify_realizer(p, r) or not is_lattice(p)):
        raise NotPlanarLattice("input is not a planar lattice with this realizer")
    edges = list(p.covers()) if edges is None else [tuple(e) for e in edges]
    for x in p.elements:
        for y in p.from_bits(p.up[p.index[x]]):
            if not h[x] < h[y]:
                raise ValueError(f"h is not a strict extension at {x!r} < {y!r}")
    if align == "left":
        pos, chains = _cone_positions(p, r, h, edges)
    else:
        pos, chains = _cone_positions(p, r.mirror(), h, edges)
        pos = {v: (-x, y) for v, (x, y) in pos.items()}
    d = Drawing(pos, tuple(sorted(tuple(e) for e in edges)), (), (pos[chains[0][0]][0],) if chains else ())
    ok = verify_drawing(Drawing(pos, d.edges)).crossing_free
    if not ok:
        raise InternalError("cone construction produced a crossing")
    return d


# ---------------------------------------------------------------------------
# Level-order layout
# ---------------------------------------------------------------------------


@dataclass
class LayoutStats:
    variables: int = 0
    constraints: int = 0
    denominator: int = 0


def level_layout(dg: DirectedPlaneGraph, h: Mapping[str, Fraction], groups: Sequence[Sequence[str]] = (),
                 margin: int = 1, stats: LayoutStats | None = None) -> dict[str, Fraction]:
    """x-coordinates realizing the planar left-to-right order at every height.

    ``dg`` must be oriented by ``h`` (equal heights only on horizontal arcs)
    and carry left-to-right successor orders.  Vertices of one group share a
    single x-coordinate.
    """
    verts = list(dg.vertices)
    arcs = dg.arcs()
    for u, v in arcs:
        if h[u] > h[v]:
            raise LayoutInfeasible(f"arc {u!r}->{v!r} points downward")
    # left-first order of the edge-subdivided digraph
    succ: dict = {}
    for u in verts:
        succ[u] = [("m", u, v) for v in dg.succ[u]]
        for v in dg.succ[u]:
            succ[("m", u, v)] = [v]
    nodes = verts + [m for u in verts for m in succ[u]]
    rank = {x: i for i, x in enumerate(left_first_order(nodes, succ, dg.source))}

    var: dict[str, int] = {}
    for gi, grp in enumerate(groups):
        for v in grp:
            if v in var:
                raise ValueError(f"vertex {v!r} in two groups")
            var[v] = gi
    nv = len(groups)
    for v in verts:
        if v not in var:
            var[v] = nv
            nv += 1

    levels = sorted(set(h[v] for v in verts))
    items: list[list] = [[] for _ in levels]
    li = {y: i for i, y in enumerate(levels)}
    for v in verts:
        items[li[h[v]]].append((rank[v], v))
    flat = []
    for u, v in arcs:
        if h[u] == h[v]:
            flat.append((u, v))
            continue
        lo, hi = bisect_right(levels, h[u]), bisect_left(levels, h[v])
        for i in range(lo, hi):
            items[i].append((rank[("m", u, v)], (u, v)))
    order = []
    for row in items:
        row.sort(key=lambda t: t[0])
        order.append([it for _, it in row])
    for u, v in flat:
        row = order[li[h[u]]]
        if row.index(v) != row.index(u) + 1:
            raise LayoutInfeasible(f"horizontal edge {u!r}-{v!r} is not between neighbours")

    def expr(item, y) -> dict[int, Fraction]:
        if isinstance(item, str):
            return {var[item]: F(1)}
        u, v = item
        t = (y - h[u]) / (h[v] - h[u])
        out: dict[int, Fraction] = {}
        out[var[u]] = out.get(var[u], 0) + 1 - t
        out[var[v]] = out.get(var[v], 0) + t
        return out

    pairs = [set(zip(row, row[1:])) for row in order]
    cons: list[dict[int, Fraction]] = []
    fans: set = set()
    for i, row in enumerate(order):
        y = levels[i]
        for a, b in zip(row, row[1:]):
            if 0 < i < len(order) - 1 and (a, b) in pairs[i - 1] and (a, b) in pairs[i + 1]:
                continue
            # two edges from a common endpoint: their gap vanishes there, so
            # demand the unit gap where the shorter one ends, not near the apex
            apex = set(a) & set(b) if not isinstance(a, str) and not isinstance(b, str) else set()
            if apex:
                if (a, b) in fans:
                    continue
                fans.add((a, b))
            ea, eb = expr(a, y), expr(b, y)
            diff = dict(eb)
            for k, c in ea.items():
                diff[k] = diff.get(k, 0) - c
            if apex:
                p = apex.pop()
                reach = min(abs(h[q] - h[p]) for q in (*a, *b) if q != p)
                scale = reach / abs(y - h[p])
                diff = {k: c * scale for k, c in diff.items()}
            diff = {k: c for k, c in diff.items() if c}
            if not diff:
                raise LayoutInfeasible(f"{a!r} and {b!r} are forced onto the same point")
            cons.append(diff)
    if stats is not None:
        stats.variables, stats.constraints = nv, len(cons)
    xs = _solve_certified(nv, cons, margin, stats)
    return {v: xs[var[v]] for v in verts}


def _solve_certified(nv: int, cons: list[dict[int, Fraction]], margin: int,
                     stats: LayoutStats | None) -> list[Fraction]:
    if nv == 0:
        return []
    if not cons:
        return [F(0)] * nv
    rows, cols, vals = [], [], []
    for r_, c in enumerate(cons):
        for k, v in c.items():
            rows.append(r_)
            cols.append(k)
            vals.append(-float(v))
    A = coo_matrix((vals, (rows, cols)), shape=(len(cons), nv)).tocsr()

    def certified(xs):
        return all(x >= 0 for x in xs) and all(sum(c * xs[k] for k, c in con.items()) > 0 for con in cons)

    last = None
    for m in (margin, 4 * margin):
        for method in ("highs", "highs-ds", "highs-ipm"):
            res = linprog(np.ones(nv), A_ub=A, b_ub=-float(m) * np.ones(len(cons)),
                          bounds=[(0, None)] * nv, method=method)
            if res.status == 0:
                break
            last = res.message
        else:
            continue
        for den in (8, 64, 1024, 1 << 20):
            xs = [F(round(float(x) * den), den) for x in res.x]
            if certified(xs):
                if stats is not None:
                    stats.denominator = den
                return xs
        # the float optimum is too ill-conditioned to round; its active set
        # still pins down a vertex, which is recomputed exactly
        xs = _exact_vertex(nv, cons, m, res)
        if xs is not None and certified(xs):
            if stats is not None:
                stats.denominator = max(x.denominator for x in xs)
            return xs
        last = "rounded solution failed exact certification"
    raise LayoutInfeasible(f"no certified layout: {last}")


def _exact_vertex(nv: int, cons: list[dict[int, Fraction]], m: int, res) -> list[Fraction] | None:
    tight = [i for i, mu in enumerate(res.ineqlin.marginals) if mu != 0]
    at_zero = [k for k in range(nv) if res.x[k] == 0]
    if len(tight) + len(at_zero) < nv:
        return None
    rows = []
    for i in tight:
        row = [QQ(0)] * (nv + 1)
        for k, c in cons[i].items():
            row[k] = QQ(c.numerator, c.denominator)
        row[nv] = QQ(m)
        rows.append(row)
    for k in at_zero:
        row = [QQ(0)] * (nv + 1)
        row[k] = QQ(1)
        rows.append(row)
    red, pivots = DomainMatrix(rows, (len(rows), nv + 1), QQ).rref()
    if nv in pivots:
        return None  # inconsistent: the float active set was wrong
    xs = [F(0)] * nv
    dense = red.to_Matrix()
    for r, col in enumerate(pivots):
        v = dense[r, nv]
        xs[col] = F(int(v.p), int(v.q))
    return xs


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------


def diagram_from_realizer(p: Poset, r: Realizer) -> DirectedPlaneGraph:
    """Cover digraph with the left-to-right orders of the dominance drawing."""
    pos1, pos2 = r.positions()
    succ = {}
    for x, y in p.covers():
        succ.setdefault(x, []).append(y)
    for x in p.elements:
        succ.setdefault(x, [])
        succ[x].sort(key=lambda y: F(pos1[y] - pos1[x], pos2[y] - pos2[x]))
    mins = p.minimal(p.elements)
    maxs = [x for x in p.elements if not p.up[p.index[x]]]
    return from_orders(p.elements, succ, mins[0], maxs[0])


@dataclass
class LatticeLayout:
    poset: Poset
    realizer: Realizer
    shape: FerrersShape
    point: tuple[int, int]
    pair: OrthogonalPair
    heights: dict[str, Fraction]
    drawing: Drawing
    stats: LayoutStats = field(default_factory=LayoutStats)


def choose_pair(p: Poset, r: Realizer, prefer_interior: bool = True):
    shape = ferrers_shape(p)
    k, l = min_sum_boundary_point(shape)
    w = interior_weights(p, r) if prefer_interior and l else None
    pair = canonical_orthogonal_pair(p, r, k, l, w)
    return shape, (k, l), pair


def _few_lines_drawing(p, r, pair, h, edges, dg_factory, stats) -> Drawing:
    k, l = pair.k, pair.l
    if l == 0:
        d = draw_prescribed_heights(p, r, h, edges=edges, check_lattice=False)
        return Drawing(d.points, d.edges, tuple(F(i) for i in range(1, k + 1)), ())
    xs = level_layout(dg_factory(), h, [list(c) for c in pair.chains], stats=stats)
    pts = {v: (xs[v], F(h[v])) for v in p.elements}
    return Drawing(pts, tuple(sorted(tuple(e) for e in edges)),
                   tuple(F(i) for i in range(1, k + 1)),
                   tuple(xs[c[0]] for c in pair.chains))


def draw_lattice_few_lines(p: Poset, r: Realizer, pair: OrthogonalPair | None = None,
                           h: Mapping[str, Fraction] | None = None,
                           check_lattice: bool = True) -> LatticeLayout:
    """Diagram on ``k`` horizontal and ``l`` vertical lines for a canonical pair."""
    if check_lattice and (not verify_realizer(p, r) or not is_lattice(p)):
        raise NotPlanarLattice("input is not a planar lattice with this realizer")
    shape = ferrers_shape(p)
    auto = pair is None
    if auto:
        shape, point, pair = choose_pair(p, r)
    else:
        point = (pair.k, pair.l)
    if h is None:
        h = extend_heights(p, pair.antichains, r.L1, spacing="chain")
    stats = LayoutStats()
    edges = p.covers()
    d = _few_lines_drawing(p, r, pair, h, edges, lambda: diagram_from_realizer(p, r), stats)
    rep = verify_drawing(d, edges, edges, p.n)
    if not (rep if auto else rep.geometry_ok()):
        raise InternalError(f"lattice drawing failed verification: {rep.witnesses[:2]}")
    return LatticeLayout(p, r, shape, point, pair, dict(h), d, stats)


def dominance_drawing_of(p: Poset, r: Realizer) -> Drawing:
    """Integer grid drawing: ``x`` at its position in ``L1``, ``y`` in ``L2``."""
    pos1, pos2 = r.positions()
    pts = {x: (F(pos1[x]), F(pos2[x])) for x in p.elements}
    return Drawing(pts, tuple(sorted(p.covers())))


# ---------------------------------------------------------------------------
# Transversal structures and triangulations
# ---------------------------------------------------------------------------


@dataclass
class TransversalLayout:
    graph: PlaneGraph
    structure: TransversalStructure
    poset: Poset
    realizer: Realizer
    shape: FerrersShape
    point: tuple[int, int]
    pair: OrthogonalPair
    heights: dict[str, Fraction]
    drawing: Drawing
    stats: LayoutStats = field(default_factory=LayoutStats)


def _red_setup(g: PlaneGraph, ts: TransversalStructure):
    red = color_subgraph(g, ts, RED)
    p = poset_from_st_graph(red)
    r = compute_realizer(red, p)
    return red, p, r


def _edge_colors(g: PlaneGraph, ts: TransversalStructure, red_arcs) -> dict[tuple[str, str], str]:
    colors = {}
    for u, v in red_arcs:
        colors[(u, v)] = RED
    for u, v in ts.arcs(BLUE):
        colors[(u, v)] = BLUE
    return colors


def _orient_by_heights(g: PlaneGraph, ts: TransversalStructure, h, source, sink) -> DirectedPlaneGraph:
    def is_arc(u, v):
        if h[u] != h[v]:
            return h[u] < h[v]
        e = frozenset((u, v))
        if e in ts.direction:
            return ts.direction[e] == (u, v)
        raise LayoutInfeasible(f"outer edge {u!r}-{v!r} is horizontal")

    try:
        return from_plane_graph(g, is_arc, source=source, sink=sink)
    except ValueError as exc:
        raise LayoutInfeasible(str(exc)) from exc


def draw_transversal(g: PlaneGraph, ts: TransversalStructure | None = None) -> TransversalLayout:
    """Drawing of the whole 4-gon triangulation (red and blue edges) on few lines."""
    ts = compute_transversal_structure(g) if ts is None else ts
    red, p, r = _red_setup(g, ts)
    shape, point, pair = choose_pair(p, r)
    h = extend_heights(p, pair.antichains, r.L1, spacing="chain")
    edges = [tuple(e) for e in g.edges()]
    s, a, t, b = outer_labels(g)
    stats = LayoutStats()
    d = _few_lines_drawing(p, r, pair, h, edges, lambda: _orient_by_heights(g, ts, h, s, t), stats)
    red_arcs = red.arcs()
    d = Drawing(d.points, d.edges, d.horizontal, d.vertical, (), _edge_colors(g, ts, red_arcs))
    rep = verify_drawing(d, edges, red_arcs, g.n)
    if not rep:
        raise InternalError(f"transversal drawing failed verification: {rep.witnesses[:2]}")
    return TransversalLayout(g, ts, p, r, shape, point, pair, dict(h), d, stats)


@dataclass
class TriangulationLayout(TransversalLayout):
    triangulation: PlaneGraph | None = None
    sentinel_offset: int = 0


def draw_4connected_triangulation(tri: PlaneGraph, max_doublings: int = 8) -> TriangulationLayout:
    """Straight-line drawing of a 4-connected triangulation on at most sqrt(2n) lines.

    One outer edge ``s-t`` is removed, the rest is drawn from its transversal
    structure with ``s`` and ``t`` at sentinel heights, and ``s``, ``t`` and
    the edge between them go on one additional vertical line.
    """
    bad = is_4connected_triangulation(tri)
    if bad:
        raise NotA4ConnectedTriangulation(f"not a 4-connected triangulation: {bad[:3]}")
    g = delete_outer_edge(tri)
    ts = compute_transversal_structure(g)
    red, p, r = _red_setup(g, ts)
    shape, point, pair = choose_pair(p, r)
    s, a, t, b = outer_labels(g)
    h0 = extend_heights(p, pair.antichains, r.L1, spacing="chain")
    rest = [v for v in p.elements if v not in (s, t)]
    chains = [[c for c in ch if c not in (s, t)] for ch in pair.chains]
    chains = [c for c in chains if c]
    ordinates = [i for i, A in enumerate(pair.antichains, start=1) if set(A) - {s, t}]
    full = add_st_edge(g)
    n = tri.n
    if not bound_holds(n, len(ordinates), len(chains), 1):
        raise InternalError("line bound fails before drawing")
    edges = [tuple(e) for e in full.edges()]
    arcs = red.arcs() + [(s, t)]
    colors = _edge_colors(g, ts, red.arcs())
    colors[(s, t)] = RED
    offset = F(1)
    lo, hi = min(h0[v] for v in rest), max(h0[v] for v in rest)
    last = None
    for _ in range(max_doublings):
        h = dict(h0)
        h[s], h[t] = lo - offset, hi + offset
        stats = LayoutStats()
        try:
            dg = _orient_by_heights(full, ts, h, s, t)
            xs = level_layout(dg, h, chains + [[s, t]], stats=stats)
        except LayoutInfeasible as exc:
            last = exc
            offset *= 2
            continue
        pts = {v: (xs[v], F(h[v])) for v in full.vertices}
        d = Drawing(pts, tuple(sorted(edges)), tuple(F(i) for i in ordinates),
                    tuple(xs[c[0]] for c in chains), (xs[s],), colors)
        rep = verify_drawing(d, edges, arcs, n)
        if not rep:
            raise InternalError(f"triangulation drawing failed verification: {rep.witnesses[:2]}")
        lay = TriangulationLayout(g, ts, p, r, shape, point, pair, h, d, stats)
        lay.triangulation = tri
        lay.sentinel_offset = int(offset)
        return lay
    raise InternalError(f"no layout after {max_doublings} sentinel doublings: {last}")


def draw_graph(g: PlaneGraph):
    """Dispatch on the outer face: triangle -> triangulation path, 4-gon -> transversal path."""
    if len(g.outer_face) == 3:
        return draw_4connected_triangulation(g)
    return draw_transversal(g)
