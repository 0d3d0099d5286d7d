"""Plane graphs stored as rotation systems.

A :class:`PlaneGraph` is a combinatorial map: for every vertex the clockwise
cyclic list of its neighbours, plus the outer face listed clockwise.  Faces
are traced with the rule ``(u -> v)  ->  (v -> next_cw(v, u))``; with that
rule inner faces come out counter-clockwise and the outer face clockwise.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    """Base class for malformed or unsuitable graph input."""


class MalformedRotation(GraphError):
    pass


class NonplanarEmbedding(GraphError):
    pass


class NotATriangulation(GraphError):
    pass


class TooSmall(GraphError):
    pass


class GenerationFailed(RuntimeError):
    pass


def _canonical_cycle(cycle: Sequence[str]) -> tuple[str, ...]:
    i = min(range(len(cycle)), key=lambda j: cycle[j])
    return tuple(cycle[i:]) + tuple(cycle[:i])


def same_cycle(c1: Sequence[str], c2: Sequence[str]) -> bool:
    """True if two cyclic sequences coincide up to rotation (not reflection)."""
    return len(c1) == len(c2) and _canonical_cycle(c1) == _canonical_cycle(c2)


@dataclass(frozen=True)
class PlaneGraph:
    vertices: tuple[str, ...]
    rotation: Mapping[str, tuple[str, ...]]
    outer_face: tuple[str, ...]
    labels: Mapping[str, str] = field(default_factory=dict)

    @classmethod
    def build(cls, rotation, outer_face, labels=None, vertices=None) -> "PlaneGraph":
        rot = {str(v): tuple(str(u) for u in nbrs) for v, nbrs in rotation.items()}
        verts = tuple(str(v) for v in vertices) if vertices is not None else tuple(rot)
        for v in verts:
            rot.setdefault(v, ())
        lab = {str(k): str(v) for k, v in (labels or {}).items()}
        return cls(verts, rot, tuple(str(v) for v in outer_face), lab)

    # -- basic queries -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    def degree(self, v: str) -> int:
        return len(self.rotation[v])

    def neighbors(self, v: str) -> tuple[str, ...]:
        return self.rotation[v]

    def has_edge(self, u: str, v: str) -> bool:
        return v in self.rotation.get(u, ())

    def edges(self) -> list[tuple[str, str]]:
        """Undirected edges as sorted pairs, in deterministic order."""
        out = set()
        for v in self.vertices:
            for u in self.rotation[v]:
                out.add((u, v) if u < v else (v, u))
        return sorted(out)

    def next_cw(self, v: str, u: str) -> str:
        rot = self.rotation[v]
        return rot[(rot.index(u) + 1) % len(rot)]

    def prev_cw(self, v: str, u: str) -> str:
        rot = self.rotation[v]
        return rot[(rot.index(u) - 1) % len(rot)]

    def outer_edges(self) -> set[frozenset]:
        f = self.outer_face
        return {frozenset((f[i], f[(i + 1) % len(f)])) for i in range(len(f))}

    def is_outer_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.outer_edges()

    def inner_edges(self) -> list[tuple[str, str]]:
        outer = self.outer_edges()
        return [e for e in self.edges() if frozenset(e) not in outer]

    def label(self, name: str) -> str:
        return self.labels[name]

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict:
        d = {
            "vertices": list(self.vertices),
            "rotation": {v: list(self.rotation[v]) for v in self.vertices},
            "outer_face": list(self.outer_face),
        }
        if self.labels:
            d["labels"] = dict(self.labels)
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "PlaneGraph":
        return cls.build(d["rotation"], d["outer_face"], d.get("labels"), d.get("vertices"))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "PlaneGraph":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# Face traversal and validation
# ---------------------------------------------------------------------------


def check_symmetric(g: PlaneGraph) -> None:
    for v in g.vertices:
        nbrs = g.rotation[v]
        if len(set(nbrs)) != len(nbrs):
            raise MalformedRotation(f"vertex {v!r} lists a neighbour twice")
        for u in nbrs:
            if u == v:
                raise MalformedRotation(f"loop at {v!r}")
            if u not in g.rotation:
                raise MalformedRotation(f"unknown vertex {u!r} in rotation of {v!r}")
            if v not in g.rotation[u]:
                raise MalformedRotation(f"edge {v!r}-{u!r} is not symmetric")


def traverse_faces(g: PlaneGraph) -> list[tuple[str, ...]]:
    """All faces of the map; raises if the embedding is not of genus 0."""
    check_symmetric(g)
    seen: set[tuple[str, str]] = set()
    faces = []
    for v in g.vertices:
        for u in g.rotation[v]:
            if (v, u) in seen:
                continue
            face = []
            a, b = v, u
            while (a, b) not in seen:
                seen.add((a, b))
                face.append(a)
                a, b = b, g.next_cw(b, a)
            faces.append(tuple(face))
    n_edges = len(seen) // 2
    comps = _components(g)
    if g.n - n_edges + len(faces) != 1 + comps:
        raise NonplanarEmbedding(
            f"Euler check failed: V={g.n}, E={n_edges}, F={len(faces)}, components={comps}"
        )
    return faces


def _components(g: PlaneGraph) -> int:
    seen: set[str] = set()
    count = 0
    for v in g.vertices:
        if v in seen:
            continue
        count += 1
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            for y in g.rotation[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return count


def find_outer_face(g: PlaneGraph, faces=None) -> tuple[str, ...]:
    faces = faces if faces is not None else traverse_faces(g)
    for f in faces:
        if same_cycle(f, g.outer_face):
            return f
    raise GraphError("outer_face is not a face of the rotation system")


def triangles(g: PlaneGraph) -> list[tuple[str, str, str]]:
    """All 3-cycles, each as a sorted triple, found by neighbour intersection."""
    out = []
    nbr = {v: set(g.rotation[v]) for v in g.vertices}
    for u, v in g.edges():
        for w in nbr[u] & nbr[v]:
            if w > v:
                out.append((u, v, w))
    return sorted(out)


@dataclass
class ValidationReport:
    is_4gon_inner_triangulation: bool
    violations: list[tuple[str, object]]

    def __bool__(self) -> bool:
        return self.is_4gon_inner_triangulation


def validate(g: PlaneGraph) -> ValidationReport:
    """Check that ``g`` is an internally 4-connected inner triangulation of a 4-gon."""
    violations: list[tuple[str, object]] = []
    try:
        check_symmetric(g)
    except MalformedRotation as exc:
        return ValidationReport(False, [("multi-edge", str(exc))])
    if _components(g) != 1:
        violations.append(("disconnected", g.vertices))
    try:
        faces = traverse_faces(g)
    except NonplanarEmbedding as exc:
        return ValidationReport(False, violations + [("nonplanar", str(exc))])
    try:
        outer = find_outer_face(g, faces)
    except GraphError as exc:
        return ValidationReport(False, violations + [("outer-not-4gon", str(exc))])
    if len(outer) != 4 or len(set(outer)) != 4:
        violations.append(("outer-not-4gon", outer))
    face_sets = set()
    for f in faces:
        if f is outer:
            continue
        if len(f) != 3 or len(set(f)) != 3:
            violations.append(("nontriangular-inner-face", f))
        else:
            face_sets.add(frozenset(f))
    for tri in triangles(g):
        if frozenset(tri) not in face_sets:
            violations.append(("separating-triangle", tri))
    return ValidationReport(not violations, violations)


def is_4connected_triangulation(g: PlaneGraph) -> list[tuple[str, object]]:
    """Violations preventing ``g`` from being a 4-connected plane triangulation."""
    out: list[tuple[str, object]] = []
    try:
        faces = traverse_faces(g)
    except GraphError as exc:
        return [("nonplanar", str(exc))]
    if g.n < 6:
        out.append(("too-small", g.n))
    face_sets = set()
    for f in faces:
        if len(f) != 3 or len(set(f)) != 3:
            out.append(("nontriangular-face", f))
        else:
            face_sets.add(frozenset(f))
    for tri in triangles(g):
        if frozenset(tri) not in face_sets:
            out.append(("separating-triangle", tri))
    return out


# ---------------------------------------------------------------------------
# Outer-edge surgery
# ---------------------------------------------------------------------------


def delete_outer_edge(t: PlaneGraph, edge: tuple[str, str] | None = None) -> PlaneGraph:
    """Remove an outer edge of a 4-connected triangulation.

    The result has outer 4-gon ``s, a, t, b`` (clockwise) where ``{s, t}`` is
    the deleted edge and ``b`` is the third vertex of the old outer triangle.
    Without ``edge`` the outer edge with the smallest endpoint pair is used.
    """
    if t.n < 6:
        raise TooSmall(f"need at least 6 vertices, got {t.n}")
    bad = is_4connected_triangulation(t)
    if bad:
        raise NotATriangulation(f"not a 4-connected triangulation: {bad[:3]}")
    outer = find_outer_face(t)
    cyc = list(outer)
    if edge is None:
        pairs = [(cyc[i], cyc[(i + 1) % 3]) for i in range(3)]
        edge = min(pairs, key=lambda p: tuple(sorted(p)))
    u, v = edge
    if not t.is_outer_edge(u, v):
        raise GraphError(f"{u!r}-{v!r} is not an outer edge")
    # outer triangle clockwise is (s, t, b): t follows s
    i = cyc.index(u)
    s, tt = (u, v) if cyc[(i + 1) % 3] == v else (v, u)
    b = next(w for w in cyc if w not in (s, tt))
    a = next(w for w in t.rotation[s] if w in t.rotation[tt] and w != b)
    rot = {x: list(t.rotation[x]) for x in t.vertices}
    rot[s].remove(tt)
    rot[tt].remove(s)
    g = PlaneGraph.build(rot, (s, a, tt, b), {"s": s, "a": a, "t": tt, "b": b}, t.vertices)
    return g


def add_st_edge(g: PlaneGraph) -> PlaneGraph:
    """Inverse of :func:`delete_outer_edge`: close the 4-gon with edge s-t around a."""
    s, a, t, b = (g.labels[k] for k in "satb")
    rot = {x: list(g.rotation[x]) for x in g.vertices}
    rot[s].insert(rot[s].index(b) + 1, t)
    rot[t].insert(rot[t].index(a) + 1, s)
    return PlaneGraph.build(rot, (s, t, b), {"s": s, "a": a, "t": t, "b": b}, g.vertices)


# ---------------------------------------------------------------------------
# Named instances
# ---------------------------------------------------------------------------


def pyr5() -> PlaneGraph:
    """4-gon s,a,t,b with a centre vertex v adjacent to all four."""
    rot = {
        "s": ["a", "v", "b"],
        "a": ["t", "v", "s"],
        "t": ["b", "v", "a"],
        "b": ["s", "v", "t"],
        "v": ["a", "t", "b", "s"],
    }
    return PlaneGraph.build(rot, ["s", "a", "t", "b"], {"s": "s", "a": "a", "t": "t", "b": "b"},
                            ["s", "a", "t", "b", "v"])


def _from_coordinates(coords: Mapping[str, tuple[float, float]], edges: Iterable, outer) -> PlaneGraph:
    import math

    nbrs: dict[str, list[str]] = {v: [] for v in coords}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    rot = {}
    for v, ns in nbrs.items():
        x0, y0 = coords[v]
        # clockwise = decreasing angle
        rot[v] = sorted(ns, key=lambda u: -math.atan2(coords[u][1] - y0, coords[u][0] - x0))
    return PlaneGraph.build(rot, outer, vertices=list(coords))


def octahedron() -> PlaneGraph:
    """OCT6: outer triangle x1, x2, x3 with inner triangle y1, y2, y3."""
    coords = {
        "x1": (0.0, 0.0), "x2": (0.0, 10.0), "x3": (9.0, 5.0),
        "y1": (3.0, 5.0), "y2": (5.0, 3.0), "y3": (5.0, 7.0),
    }
    edges = [
        ("x1", "x2"), ("x2", "x3"), ("x3", "x1"),
        ("y1", "y2"), ("y2", "y3"), ("y3", "y1"),
        ("x1", "y1"), ("x1", "y2"), ("x2", "y1"), ("x2", "y3"), ("x3", "y2"), ("x3", "y3"),
    ]
    return _from_coordinates(coords, edges, ["x1", "x2", "x3"])


def icosahedron() -> PlaneGraph:
    """The icosahedron: outer triangle, middle hexagon, inner triangle."""
    import math

    def polar(r, deg):
        return (r * math.cos(math.radians(deg)), r * math.sin(math.radians(deg)))

    coords = {}
    for k in range(3):
        coords[f"o{k}"] = polar(100, 90 - 120 * k)
        coords[f"i{k}"] = polar(12, 60 - 120 * k)
    for j in range(6):
        coords[f"m{j}"] = polar(40, 120 - 60 * j)
    edges = set()
    for k in range(3):
        edges.add((f"o{k}", f"o{(k + 1) % 3}"))
        edges.add((f"i{k}", f"i{(k + 1) % 3}"))
        for j in (2 * k - 1, 2 * k, 2 * k + 1):
            edges.add((f"o{k}", f"m{j % 6}"))
        for j in (2 * k, 2 * k + 1, 2 * k + 2):
            edges.add((f"i{k}", f"m{j % 6}"))
    for j in range(6):
        edges.add((f"m{j}", f"m{(j + 1) % 6}"))
    return _from_coordinates(coords, sorted(edges), ["o0", "o1", "o2"])


def k4() -> PlaneGraph:
    coords = {"p": (0.0, 0.0), "q": (0.0, 10.0), "r": (9.0, 5.0), "c": (3.0, 5.0)}
    edges = [("p", "q"), ("q", "r"), ("r", "p"), ("c", "p"), ("c", "q"), ("c", "r")]
    return _from_coordinates(coords, edges, ["p", "q", "r"])


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------


class _MutableMap:
    """Scratch rotation system used by the generator."""

    def __init__(self, g: PlaneGraph):
        self.rot = {v: list(g.rotation[v]) for v in g.vertices}
        self.outer = tuple(g.outer_face)
        self.labels = dict(g.labels)
        self.order = list(g.vertices)

    def next_cw(self, v, u):
        r = self.rot[v]
        return r[(r.index(u) + 1) % len(r)]

    def prev_cw(self, v, u):
        r = self.rot[v]
        return r[(r.index(u) - 1) % len(r)]

    def is_outer(self, u, v):
        f = self.outer
        return any({f[i], f[(i + 1) % len(f)]} == {u, v} for i in range(len(f)))

    def inner_edges(self):
        out = []
        for v in self.order:
            for u in self.rot[v]:
                if v < u and not self.is_outer(u, v):
                    out.append((v, u))
        return out

    def apexes(self, u, v):
        # x: face on the cw side of u->v at u, y: the other side
        return self.next_cw(u, v), self.prev_cw(u, v)

    def subdivide(self, u, v, w):
        x, y = self.apexes(u, v)
        ru, rv = self.rot[u], self.rot[v]
        ru[ru.index(v)] = w
        rv[rv.index(u)] = w
        rx = self.rot[x]
        rx.insert(rx.index(u) + 1, w)
        ry = self.rot[y]
        ry.insert(ry.index(v) + 1, w)
        self.rot[w] = [u, y, v, x]
        self.order.append(w)

    def can_flip(self, u, v):
        x, y = self.apexes(u, v)
        if y in self.rot[x]:
            return False
        outer = set(self.outer)
        if len(self.outer) == 4 and x in outer and y in outer:
            return False
        common = (set(self.rot[x]) & set(self.rot[y])) - {u, v}
        if common:
            return False
        return len(self.rot[u]) > 3 and len(self.rot[v]) > 3

    def flip(self, u, v):
        x, y = self.apexes(u, v)
        self.rot[u].remove(v)
        self.rot[v].remove(u)
        rx = self.rot[x]
        rx.insert(rx.index(u) + 1, y)
        ry = self.rot[y]
        ry.insert(ry.index(v) + 1, x)

    def freeze(self) -> PlaneGraph:
        return PlaneGraph.build(self.rot, self.outer, self.labels, self.order)


def generate_instance(n: int, seed: int = 0, max_tries: int = 50) -> PlaneGraph:
    """Random internally 4-connected inner triangulation of a 4-gon on ``n`` vertices.

    Grows PYR5 by subdividing random inner edges, interleaved with random
    diagonal flips; every candidate is checked against :func:`validate`.
    """
    if n < 5:
        raise GenerationFailed(f"no instance with {n} < 5 vertices")
    rng = random.Random(seed)
    for _ in range(max_tries):
        m = _MutableMap(pyr5())
        for i in range(n - 5):
            edges = m.inner_edges()
            u, v = edges[rng.randrange(len(edges))]
            x, y = m.apexes(u, v)
            if y in m.rot[x]:
                continue
            m.subdivide(u, v, f"v{i}")
            for _ in range(3):
                edges = m.inner_edges()
                u, v = edges[rng.randrange(len(edges))]
                if m.can_flip(u, v):
                    m.flip(u, v)
        g = m.freeze()
        if g.n == n and validate(g):
            return g
    raise GenerationFailed(f"could not generate an instance with n={n}")


def generate_triangulation(n: int, seed: int = 0, max_tries: int = 200) -> PlaneGraph:
    """Random 4-connected plane triangulation on ``n`` vertices (n = 6 or n >= 8)."""
    if n < 6:
        raise GenerationFailed(f"no 4-connected triangulation with {n} < 6 vertices")
    rng = random.Random(seed)
    for _ in range(max_tries):
        g = generate_instance(n, rng.randrange(1 << 30))
        s, t = g.labels["s"], g.labels["t"]
        if set(g.rotation[s]) & set(g.rotation[t]) - {g.labels["a"], g.labels["b"]}:
            continue
        tri = add_st_edge(g)
        if not is_4connected_triangulation(tri):
            return PlaneGraph.build(tri.rotation, tri.outer_face, vertices=tri.vertices)
    raise GenerationFailed(f"could not generate a 4-connected triangulation with n={n}")


def relabel(g: PlaneGraph, names: Mapping[str, str]) -> PlaneGraph:
    rot = {names[v]: [names[u] for u in g.rotation[v]] for v in g.vertices}
    return PlaneGraph.build(
        rot, [names[v] for v in g.outer_face],
        {k: names[v] for k, v in g.labels.items()}, [names[v] for v in g.vertices],
    )


def all_edges_pairs(g: PlaneGraph) -> list[tuple[str, str]]:
    return [tuple(e) for e in combinations(g.vertices, 2) if g.has_edge(*e)]
