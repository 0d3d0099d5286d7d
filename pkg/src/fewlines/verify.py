"""Exact verification of drawings.

All predicates are integer sign tests: coordinates are scaled to a common
denominator before any geometry happens.
"""

from __future__ import annotations

import json
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .drawing_types import Drawing


def _scaled(points: dict[str, tuple[Fraction, Fraction]]) -> dict[str, tuple[int, int]]:
    den = 1
    for x, y in points.values():
        den = lcm(den, x.denominator, y.denominator)
    return {v: (int(x * den), int(y * den)) for v, (x, y) in points.items()}


def _orient(a, b, c) -> int:
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _on_segment(a, b, p) -> bool:
    return (_orient(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_intersect(a, b, c, d) -> bool:
    """Closed segments ``ab`` and ``cd`` share a point."""
    o1, o2, o3, o4 = _orient(a, b, c), _orient(a, b, d), _orient(c, d, a), _orient(c, d, b)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    return (_on_segment(a, b, c) or _on_segment(a, b, d)
            or _on_segment(c, d, a) or _on_segment(c, d, b))


def _overlap_from_common(p, a, b) -> bool:
    """Segments ``pa`` and ``pb`` overlap beyond their shared endpoint ``p``."""
    if _orient(p, a, b) != 0:
        return False
    return (a[0] - p[0]) * (b[0] - p[0]) + (a[1] - p[1]) * (b[1] - p[1]) > 0


def check_distinct(d: Drawing) -> tuple[bool, list]:
    seen: dict[tuple, str] = {}
    for v in sorted(d.points):
        key = d.points[v]
        if key in seen:
            return False, [seen[key], v]
        seen[key] = v
    return True, []


def check_crossing_free(d: Drawing, edges: Iterable[tuple[str, str]] | None = None) -> tuple[bool, list]:
    """No two edges meet except at a common endpoint, and no edge passes through a vertex."""
    ok, w = check_distinct(d)
    if not ok:
        return False, ["coincident", *w]
    pts = _scaled(d.points)
    es = sorted(tuple(sorted(e)) for e in (d.edges if edges is None else edges))
    # edges through vertices
    by_x = sorted((p[0], v) for v, p in pts.items())
    xs = [x for x, _ in by_x]
    for u, v in es:
        a, b = pts[u], pts[v]
        lo, hi = bisect_left(xs, min(a[0], b[0])), bisect_right(xs, max(a[0], b[0]))
        for _, w_ in by_x[lo:hi]:
            if w_ not in (u, v) and _on_segment(a, b, pts[w_]):
                return False, [[u, v], w_]
    boxes = []
    for u, v in es:
        a, b = pts[u], pts[v]
        boxes.append((min(a[0], b[0]), max(a[0], b[0]), min(a[1], b[1]), max(a[1], b[1]), u, v))
    boxes.sort()
    for i, (x0, x1, y0, y1, u, v) in enumerate(boxes):
        a, b = pts[u], pts[v]
        for j in range(i + 1, len(boxes)):
            X0, X1, Y0, Y1, s, t = boxes[j]
            if X0 > x1:
                break
            if Y0 > y1 or Y1 < y0:
                continue
            common = {u, v} & {s, t}
            c, e = pts[s], pts[t]
            if len(common) == 2:
                return False, [[u, v], [s, t]]
            if common:
                p = common.pop()
                q1 = v if u == p else u
                q2 = t if s == p else s
                if _overlap_from_common(pts[p], pts[q1], pts[q2]):
                    return False, [[u, v], [s, t]]
            elif segments_intersect(a, b, c, e):
                return False, [[u, v], [s, t]]
    return True, []


def check_upward(d: Drawing, arcs: Iterable[tuple[str, str]]) -> tuple[bool, list]:
    for u, v in arcs:
        if not d.points[u][1] < d.points[v][1]:
            return False, [u, v]
    return True, []


def cover_counts(d: Drawing) -> tuple[int, int, int]:
    return len(d.horizontal), len(d.vertical), len(d.extra_vertical)


def bound_holds(n: int, k: int, l: int, extra: int) -> bool:
    """Integer form of the line bound: sqrt(2n) - 1 for the lattice path, sqrt(2n) with an extra line."""
    if extra:
        return (k + l + extra) ** 2 <= 2 * n
    return (k + l + 1) ** 2 <= 2 * n


def check_covered(d: Drawing) -> tuple[bool, list]:
    """Every vertex lies on a declared line (exact membership)."""
    hs = set(d.horizontal)
    vs = set(d.vertical) | set(d.extra_vertical)
    missing = sorted(v for v, (x, y) in d.points.items() if y not in hs and x not in vs)
    if missing:
        return False, ["uncovered", *missing[:5]]
    return True, []


def check_cover_bound(d: Drawing, n: int | None = None) -> tuple[bool, list]:
    n = len(d.points) if n is None else n
    ok, w = check_covered(d)
    if not ok:
        return ok, w
    k, l, extra = cover_counts(d)
    if not bound_holds(n, k, l, extra):
        return False, ["bound", k, l, extra, n]
    return True, []


def check_crossings_host_vertices(d: Drawing) -> tuple[bool, list]:
    """Every crossing of a horizontal and a (non-extra) vertical cover line is a vertex."""
    occupied = set(d.points.values())
    for y in d.horizontal:
        for x in d.vertical:
            if (x, y) not in occupied:
                return False, [str(x), str(y)]
    return True, []


@dataclass
class VerifyReport:
    crossing_free: bool
    upward_ok: bool
    cover_count: tuple[int, int, int]
    bound_ok: bool
    crossings_host_vertices: bool
    edges_match: bool = True
    all_covered: bool = True
    witnesses: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return (self.crossing_free and self.upward_ok and self.bound_ok
                and self.crossings_host_vertices and self.edges_match)

    def geometry_ok(self) -> bool:
        """Everything except the line-count bound."""
        return (self.crossing_free and self.upward_ok and self.all_covered
                and self.crossings_host_vertices and self.edges_match)

    @property
    def total_lines(self) -> int:
        return sum(self.cover_count)

    def to_dict(self) -> dict:
        return {
            "ok": bool(self),
            "crossing_free": self.crossing_free,
            "upward_ok": self.upward_ok,
            "cover_count": {"horizontal": self.cover_count[0], "vertical": self.cover_count[1],
                            "extra_vertical": self.cover_count[2]},
            "bound_ok": self.bound_ok,
            "crossings_host_vertices": self.crossings_host_vertices,
            "edges_match": self.edges_match,
            "all_covered": self.all_covered,
            "witnesses": _jsonable(self.witnesses),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, Fraction):
        return str(x)
    return x


def verify_drawing(d: Drawing, edges: Sequence[tuple[str, str]] | None = None,
                   arcs: Iterable[tuple[str, str]] = (), n: int | None = None) -> VerifyReport:
    """Run every check; ``edges`` (if given) must equal the drawn edge set."""
    wit: list = []
    match = True
    if edges is not None:
        match = {frozenset(e) for e in edges} == {frozenset(e) for e in d.edges}
        if not match:
            wit.append(["edge set differs from the graph"])
    cf, w = check_crossing_free(d)
    if not cf:
        wit.append(["crossing", w])
    up, w = check_upward(d, arcs)
    if not up:
        wit.append(["upward", w])
    cov, _ = check_covered(d)
    cb, w = check_cover_bound(d, n)
    if not cb:
        wit.append(["cover", w])
    ch, w = check_crossings_host_vertices(d)
    if not ch:
        wit.append(["empty crossing", w])
    return VerifyReport(cf, up, cover_counts(d), cb, ch, match, cov, wit)
