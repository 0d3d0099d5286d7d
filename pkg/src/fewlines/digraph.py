"""Upward (bipolar) plane digraphs with left-to-right adjacency orders."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .graph import PlaneGraph


@dataclass(frozen=True)
class DirectedPlaneGraph:
    """A plane digraph with designated source and sink.

    ``succ[v]`` lists the out-neighbours of ``v`` from left to right and
    ``pred[v]`` the in-neighbours from left to right, where "up" is the
    direction of the arcs.
    """

    vertices: tuple[str, ...]
    succ: Mapping[str, tuple[str, ...]]
    pred: Mapping[str, tuple[str, ...]]
    source: str
    sink: str
    outer_face: tuple[str, ...] = ()

    def arcs(self) -> list[tuple[str, str]]:
        return [(u, v) for u in self.vertices for v in self.succ[u]]

    def arc_set(self) -> set[tuple[str, str]]:
        return set(self.arcs())

    def reversed_sides(self) -> "DirectedPlaneGraph":
        """Mirror image: left and right swapped, arcs unchanged."""
        return DirectedPlaneGraph(
            self.vertices,
            {v: tuple(reversed(self.succ[v])) for v in self.vertices},
            {v: tuple(reversed(self.pred[v])) for v in self.vertices},
            self.source, self.sink, tuple(reversed(self.outer_face)),
        )


def from_plane_graph(
    g: PlaneGraph,
    is_arc: Callable[[str, str], bool],
    keep: Callable[[str, str], bool] | None = None,
    source: str | None = None,
    sink: str | None = None,
) -> DirectedPlaneGraph:
    """Orient (a subgraph of) ``g``.

    ``keep(u, v)`` selects the edges of the subgraph, ``is_arc(u, v)`` tells
    whether the kept edge is directed ``u -> v``.  Out-neighbours are read
    clockwise starting right after the block of in-neighbours; for the source
    (and, dually, the sink) the start is the corner of the outer face.
    """
    keep = keep or (lambda u, v: True)
    rot = {v: [u for u in g.rotation[v] if keep(v, u)] for v in g.vertices}
    outer = list(g.outer_face)
    succ: dict[str, tuple[str, ...]] = {}
    pred: dict[str, tuple[str, ...]] = {}
    for v in g.vertices:
        r = rot[v]
        m = len(r)
        if m == 0:
            succ[v], pred[v] = (), ()
            continue
        out = [is_arc(v, u) for u in r]
        if all(out) or not any(out):
            start = _outer_successor(outer, rot, v)
            seq = r[start:] + r[:start]
            if all(out):
                succ[v], pred[v] = tuple(seq), ()
            else:
                succ[v], pred[v] = (), tuple(reversed(seq))
            continue
        # first out-neighbour clockwise after an in-neighbour
        i = next(j for j in range(m) if out[j] and not out[j - 1])
        seq = r[i:] + r[:i]
        flags = out[i:] + out[:i]
        k = flags.index(False)
        if any(flags[k:]):
            raise ValueError(f"out-arcs at {v!r} are not contiguous")
        succ[v] = tuple(seq[:k])
        pred[v] = tuple(reversed(seq[k:]))
    srcs = [v for v in g.vertices if not pred[v] and succ[v]]
    snks = [v for v in g.vertices if not succ[v] and pred[v]]
    source = source if source is not None else (srcs[0] if srcs else g.vertices[0])
    sink = sink if sink is not None else (snks[0] if snks else g.vertices[-1])
    return DirectedPlaneGraph(tuple(g.vertices), succ, pred, source, sink, tuple(outer))


def _outer_successor(outer: list[str], rot: Mapping[str, list[str]], v: str) -> int:
    """Index in ``rot[v]`` of the neighbour following ``v`` on the outer face."""
    r = rot[v]
    if v in outer:
        i = outer.index(v)
        for step in range(1, len(outer)):
            w = outer[(i + step) % len(outer)]
            if w in r:
                return r.index(w)
    return 0


def from_orders(vertices, succ: Mapping[str, list[str]], source: str, sink: str) -> DirectedPlaneGraph:
    """Build from explicit left-to-right successor lists; predecessor orders are derived.

    The left-to-right order of the in-arcs of ``v`` is recovered from a
    left-first topological sweep: arcs entering ``v`` from further left are
    discovered while the sweep is further left.
    """
    vertices = tuple(vertices)
    pred: dict[str, list[str]] = {v: [] for v in vertices}
    order = left_first_order(vertices, succ, source)
    rank = {v: i for i, v in enumerate(order)}
    for u in vertices:
        for v in succ[u]:
            pred[v].append(u)
    for v in vertices:
        pred[v].sort(key=lambda u: rank[u])
    return DirectedPlaneGraph(vertices, {v: tuple(succ[v]) for v in vertices},
                              {v: tuple(pred[v]) for v in vertices}, source, sink)


def left_first_order(vertices, succ: Mapping[str, tuple[str, ...] | list[str]], source: str) -> list[str]:
    """Topological order putting left elements before right ones.

    Reverse post-order of a depth-first search that explores out-arcs from
    right to left.
    """
    return _dfs_order(vertices, succ, source, right_first=True)


def right_first_order(vertices, succ, source: str) -> list[str]:
    return _dfs_order(vertices, succ, source, right_first=False)


def _dfs_order(vertices, succ, source, right_first: bool) -> list[str]:
    seen = set()
    post: list[str] = []
    roots = [source] + [v for v in vertices if v != source]
    for root in roots:
        if root in seen:
            continue
        seen.add(root)
        stack = [(root, iter(_children(succ[root], right_first)))]
        while stack:
            v, it = stack[-1]
            for w in it:
                if w not in seen:
                    seen.add(w)
                    stack.append((w, iter(_children(succ[w], right_first))))
                    break
            else:
                stack.pop()
                post.append(v)
    post.reverse()
    return post


def _children(nbrs, right_first: bool):
    return list(reversed(nbrs)) if right_first else list(nbrs)


def is_acyclic(d: DirectedPlaneGraph) -> bool:
    indeg = {v: len(d.pred[v]) for v in d.vertices}
    stack = [v for v in d.vertices if indeg[v] == 0]
    count = 0
    while stack:
        v = stack.pop()
        count += 1
        for w in d.succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return count == len(d.vertices)


def check_bipolar(d: DirectedPlaneGraph) -> bool:
    """Acyclic, unique source and sink, both on the outer face (when one is recorded)."""
    if not is_acyclic(d):
        return False
    sources = [v for v in d.vertices if not d.pred[v]]
    sinks = [v for v in d.vertices if not d.succ[v]]
    if sources != [d.source] or sinks != [d.sink]:
        return False
    if d.outer_face and (d.source not in d.outer_face or d.sink not in d.outer_face):
        return False
    return True


def reachability(d: DirectedPlaneGraph) -> dict[str, int]:
    """Strict reachability as bitsets over ``d.vertices`` indices."""
    idx = {v: i for i, v in enumerate(d.vertices)}
    order = left_first_order(d.vertices, d.succ, d.source)
    reach = {v: 0 for v in d.vertices}
    for v in reversed(order):
        bits = 0
        for w in d.succ[v]:
            bits |= reach[w] | (1 << idx[w])
        reach[v] = bits
    return reach


def check_transitively_reduced(d: DirectedPlaneGraph) -> bool:
    idx = {v: i for i, v in enumerate(d.vertices)}
    reach = reachability(d)
    for u in d.vertices:
        for v in d.succ[u]:
            for w in d.succ[u]:
                if w != v and reach[w] >> idx[v] & 1:
                    return False
    return True
