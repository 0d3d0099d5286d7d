"""Transversal structures on internally 4-connected inner triangulations of a 4-gon.

Construction: a transversal structure is determined by its colouring, and a
colouring is valid iff every inner vertex sees exactly four colour changes
around it and no inner triangle is monochromatic.  Choosing the
monochromatic corners is a bipartite degree-constrained problem (each free
inner face gets one, each inner vertex ``v`` gets ``deg(v) - 4``), solved as
a max-flow.  Colours and orientations are then propagated from the outer
vertices, and the result is checked against the local conditions.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Mapping

import networkx as nx
from networkx.algorithms.flow import edmonds_karp

from .digraph import (DirectedPlaneGraph, check_bipolar, check_transitively_reduced,
                      from_plane_graph)
from .graph import PlaneGraph, traverse_faces, validate

RED, BLUE = "red", "blue"


class TransversalError(RuntimeError):
    pass


class InternalError(TransversalError):
    pass


@dataclass(frozen=True)
class TransversalStructure:
    """Colour and direction of every inner edge, keyed by ``frozenset({u, v})``."""

    color: Mapping[frozenset, str]
    direction: Mapping[frozenset, tuple[str, str]]

    def arcs(self, color: str) -> list[tuple[str, str]]:
        return sorted(self.direction[e] for e, c in self.color.items() if c == color)

    def edge_color(self, u: str, v: str) -> str:
        return self.color[frozenset((u, v))]

    def is_arc(self, u: str, v: str) -> bool:
        return self.direction[frozenset((u, v))] == (u, v)

    def to_dict(self) -> dict:
        edges = []
        for e in sorted(self.color, key=lambda e: tuple(sorted(e))):
            u, v = sorted(e)
            edges.append({"u": u, "v": v, "color": self.color[e], "dir": list(self.direction[e])})
        return {"edges": edges}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, d: Mapping) -> "TransversalStructure":
        color, direction = {}, {}
        for item in d["edges"]:
            e = frozenset((str(item["u"]), str(item["v"])))
            color[e] = item["color"]
            direction[e] = tuple(map(str, item["dir"]))
        return cls(color, direction)


def outer_labels(g: PlaneGraph) -> tuple[str, str, str, str]:
    if g.labels and all(k in g.labels for k in "satb"):
        return tuple(g.labels[k] for k in "satb")  # type: ignore[return-value]
    s, a, t, b = g.outer_face
    return s, a, t, b


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def _corner_faces(g: PlaneGraph):
    """Yield (v, i, face) for the corner of ``v`` between rotation slots i, i+1."""
    for v in g.vertices:
        r = g.rotation[v]
        for i in range(len(r)):
            yield v, i, frozenset((v, r[i], r[(i + 1) % len(r)]))


def _monochromatic_corners(g: PlaneGraph, outer: set[str]) -> set[tuple[str, int]]:
    inner_faces = [frozenset(f) for f in traverse_faces(g) if len(f) == 3]
    free = sorted((f for f in inner_faces if not f & outer), key=sorted)
    net = nx.DiGraph()
    src, snk = ("src",), ("snk",)
    for f in free:
        net.add_edge(src, ("f", tuple(sorted(f))), capacity=1)
    demand = 0
    for v in sorted(set(g.vertices) - outer):
        need = g.degree(v) - 4
        if need < 0:
            raise TransversalError(f"inner vertex {v!r} has degree < 4")
        if need:
            net.add_edge(("v", v), snk, capacity=need)
            demand += need
    free_set = set(free)
    for v, i, f in _corner_faces(g):
        if v not in outer and f in free_set:
            net.add_edge(("f", tuple(sorted(f))), ("v", v), capacity=1)
    if demand != len(free):
        raise TransversalError(f"corner count mismatch: {len(free)} faces vs {demand} demand")
    if not free:
        return set()
    # preflow-push iterates hash-ordered sets; edmonds-karp follows insertion order
    value, flow = nx.maximum_flow(net, src, snk, flow_func=edmonds_karp)
    if value != demand:
        raise TransversalError("no transversal edge partition (input not internally 4-connected?)")
    mono = set()
    for v, i, f in _corner_faces(g):
        node = ("f", tuple(sorted(f)))
        if v not in outer and f in free_set and flow.get(node, {}).get(("v", v), 0) == 1:
            mono.add((v, i))
    return mono


def compute_transversal_structure(g: PlaneGraph) -> TransversalStructure:
    report = validate(g)
    if not report:
        raise TransversalError(f"invalid input graph: {report.violations[:3]}")
    s, a, t, b = outer_labels(g)
    outer = {s, a, t, b}
    mono = _monochromatic_corners(g, outer)

    color: dict[frozenset, str] = {}
    for x, c in ((s, RED), (t, RED), (a, BLUE), (b, BLUE)):
        for u in g.rotation[x]:
            if u not in outer:
                color[frozenset((x, u))] = c

    def flip(c):
        return BLUE if c == RED else RED

    inner = [v for v in g.vertices if v not in outer]
    queue = deque(v for v in inner if any(frozenset((v, u)) in color for u in g.rotation[v]))
    done: set[str] = set()
    while queue:
        v = queue.popleft()
        if v in done:
            continue
        r = g.rotation[v]
        k = next(i for i, u in enumerate(r) if frozenset((v, u)) in color)
        cur = color[frozenset((v, r[k]))]
        for step in range(1, len(r) + 1):
            i = (k + step - 1) % len(r)
            j = (k + step) % len(r)
            cur = cur if (v, i) in mono else flip(cur)
            e = frozenset((v, r[j]))
            if e in color and color[e] != cur:
                raise InternalError(f"inconsistent colouring around {v!r}")
            if e not in color:
                color[e] = cur
                if r[j] not in outer and r[j] not in done:
                    queue.append(r[j])
        done.add(v)

    direction: dict[frozenset, tuple[str, str]] = {}
    for x, out in ((s, True), (t, False), (a, True), (b, False)):
        for u in g.rotation[x]:
            if u not in outer:
                direction[frozenset((x, u))] = (x, u) if out else (u, x)
    queue = deque(inner)
    pending = 0
    while queue:
        v = queue.popleft()
        r = g.rotation[v]
        known = [(i, u) for i, u in enumerate(r) if frozenset((v, u)) in direction]
        if not known:
            queue.append(v)
            pending += 1
            if pending > 4 * len(inner) + 4:
                raise InternalError("orientation propagation stalled")
            continue
        pending = 0
        _orient_around(v, r, color, direction, known[0])
    ts = TransversalStructure(color, direction)
    ok, witness = check_transversal(g, ts)
    if not ok:
        raise InternalError(f"computed structure violates the local rules at {witness!r}")
    return ts


_CYCLE = [("red", "out"), ("blue", "out"), ("red", "in"), ("blue", "in")]


def _orient_around(v, r, color, direction, anchor) -> None:
    m = len(r)
    cols = [color[frozenset((v, u))] for u in r]
    # block start indices
    starts = [i for i in range(m) if cols[i] != cols[i - 1]]
    if len(starts) != 4:
        raise InternalError(f"vertex {v!r} has {len(starts)} colour blocks")
    block_of = {}
    for bi, st in enumerate(starts):
        end = starts[(bi + 1) % 4]
        i = st
        while True:
            block_of[i] = bi
            i = (i + 1) % m
            if i == end:
                break
    ai, au = anchor
    d = direction[frozenset((v, au))]
    kind = (cols[ai], "out" if d[0] == v else "in")
    offset = _CYCLE.index(kind) - block_of[ai]
    for i, u in enumerate(r):
        c, io = _CYCLE[(block_of[i] + offset) % 4]
        if c != cols[i]:
            raise InternalError(f"colour blocks at {v!r} do not alternate")
        arc = (v, u) if io == "out" else (u, v)
        e = frozenset((v, u))
        if e in direction and direction[e] != arc:
            raise InternalError(f"inconsistent orientation of {sorted(e)}")
        direction[e] = arc


# ---------------------------------------------------------------------------
# Checks and derived graphs
# ---------------------------------------------------------------------------


def check_transversal(g: PlaneGraph, ts: TransversalStructure) -> tuple[bool, str | None]:
    """Conditions (outer vertices) and (four blocks at inner vertices); returns a witness vertex."""
    s, a, t, b = outer_labels(g)
    outer = {s, a, t, b}
    expect = {s: (RED, "out"), a: (BLUE, "out"), t: (RED, "in"), b: (BLUE, "in")}
    inner_edges = {frozenset(e) for e in g.inner_edges()}
    if set(ts.color) != inner_edges or set(ts.direction) != inner_edges:
        return False, "edge-set"
    for v in g.vertices:
        kinds = []
        for u in g.rotation[v]:
            e = frozenset((v, u))
            if e not in inner_edges:
                continue
            d = ts.direction[e]
            if v not in d or set(d) != e:
                return False, v
            kinds.append((ts.color[e], "out" if d[0] == v else "in"))
        if v in outer:
            if any(k != expect[v] for k in kinds):
                return False, v
            continue
        if not _four_blocks(kinds):
            return False, v
    return True, None


def _four_blocks(kinds) -> bool:
    m = len(kinds)
    if m < 4:
        return False
    starts = [i for i in range(m) if kinds[i] != kinds[i - 1]]
    if len(starts) != 4:
        return False
    seq = [kinds[i] for i in starts]
    k = seq.index(_CYCLE[0]) if _CYCLE[0] in seq else -1
    return k >= 0 and seq[k:] + seq[:k] == _CYCLE


def augmented_arcs(g: PlaneGraph, ts: TransversalStructure, color: str) -> list[tuple[str, str]]:
    s, a, t, b = outer_labels(g)
    extra = [(s, a), (s, b), (a, t), (b, t)] if color == RED else [(a, s), (a, t), (s, b), (t, b)]
    return sorted(ts.arcs(color) + extra)


def color_subgraph(g: PlaneGraph, ts: TransversalStructure, color: str) -> DirectedPlaneGraph:
    """The red graph (source s, sink t) or blue graph (source a, sink b), outer edges included."""
    s, a, t, b = outer_labels(g)
    arcs = set(augmented_arcs(g, ts, color))
    keep_pairs = {frozenset(x) for x in arcs}
    source, sink = (s, t) if color == RED else (a, b)
    return from_plane_graph(
        g,
        is_arc=lambda u, v: (u, v) in arcs,
        keep=lambda u, v: frozenset((u, v)) in keep_pairs,
        source=source,
        sink=sink,
    )


def red_faces(g: PlaneGraph, ts: TransversalStructure) -> list[tuple[list[str], list[str]]]:
    """Inner faces of the red graph as (left path, right path), each from s_f to t_f."""
    arcs = set(augmented_arcs(g, ts, RED))
    rot = {v: [u for u in g.rotation[v] if (u, v) in arcs or (v, u) in arcs] for v in g.vertices}
    sub = PlaneGraph.build(rot, g.outer_face, g.labels, g.vertices)
    faces = []
    for f in traverse_faces(sub):
        if set(f) == set(g.outer_face) and len(f) == 4 and _is_outer(f, g):
            continue
        faces.append(_split_face(f, arcs))
    return faces


def _is_outer(f, g) -> bool:
    from .graph import same_cycle

    return same_cycle(f, g.outer_face)


def _split_face(f, arcs) -> tuple[list[str], list[str]]:
    m = len(f)
    src = [i for i in range(m) if (f[i], f[(i + 1) % m]) in arcs and (f[i], f[i - 1]) in arcs]
    snk = [i for i in range(m) if (f[(i + 1) % m], f[i]) in arcs and (f[i - 1], f[i]) in arcs]
    if len(src) != 1 or len(snk) != 1:
        raise InternalError(f"red face {f} is not bounded by two directed paths")
    i, j = src[0], snk[0]
    # inner faces are traced counter-clockwise: forward from s_f is the right side
    right = [f[(i + k) % m] for k in range((j - i) % m + 1)]
    left = [f[(i - k) % m] for k in range((i - j) % m + 1)]
    return left, right


def blue_edge_faces(g: PlaneGraph, ts: TransversalStructure) -> dict[tuple[str, str], tuple[list[str], list[str]]]:
    """Map every blue inner arc to the red face it crosses (left path, right path)."""
    faces = red_faces(g, ts)
    sides = []
    for left, right in faces:
        sides.append((set(left[1:-1]), set(right[1:-1]), left, right))
    out = {}
    for u, v in ts.arcs(BLUE):
        found = None
        for li, ri, left, right in sides:
            if u in li and v in ri:
                if found is not None:
                    raise InternalError(f"blue arc {(u, v)} fits two red faces")
                found = (left, right)
        if found is None:
            raise InternalError(f"blue arc {(u, v)} crosses no red face")
        out[(u, v)] = found
    return out


def check_structure_properties(g: PlaneGraph, ts: TransversalStructure) -> dict[str, bool]:
    red = color_subgraph(g, ts, RED)
    blue = color_subgraph(g, ts, BLUE)
    try:
        blue_edge_faces(g, ts)
        total = True
    except InternalError:
        total = False
    return {
        "transversal": check_transversal(g, ts)[0],
        "red_bipolar": check_bipolar(red),
        "blue_bipolar": check_bipolar(blue),
        "red_reduced": check_transitively_reduced(red),
        "blue_reduced": check_transitively_reduced(blue),
        "blue_faces_total": total,
    }
