"""Finite posets, 2-dimensional realizers, conjugates and canonical partitions.

Order relations are stored as dense reachability bitsets: ``up[i]`` has bit
``j`` set iff ``elements[i] < elements[j]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .digraph import (DirectedPlaneGraph, check_bipolar, check_transitively_reduced,
                      left_first_order, reachability, right_first_order)


class PosetError(ValueError):
    pass


class NotReduced(PosetError):
    pass


class RealizerCheckFailed(PosetError):
    pass


class NotTransitive(PosetError):
    pass


def _bits(ix: Iterable[int]) -> int:
    b = 0
    for i in ix:
        b |= 1 << i
    return b


def _iter_bits(b: int):
    while b:
        low = b & -b
        yield low.bit_length() - 1
        b ^= low


@dataclass(frozen=True)
class Poset:
    elements: tuple[str, ...]
    up: tuple[int, ...]
    index: Mapping[str, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self.index:
            object.__setattr__(self, "index", {x: i for i, x in enumerate(self.elements)})

    # -- construction ----------------------------------------------------

    @classmethod
    def from_relation(cls, elements: Sequence[str], pairs: Iterable[tuple[str, str]]) -> "Poset":
        """Transitive closure of the given ``x < y`` pairs (must be acyclic)."""
        elements = tuple(elements)
        idx = {x: i for i, x in enumerate(elements)}
        succ: dict[int, set[int]] = {i: set() for i in range(len(elements))}
        indeg = [0] * len(elements)
        for x, y in pairs:
            i, j = idx[x], idx[y]
            if j not in succ[i]:
                succ[i].add(j)
                indeg[j] += 1
        order = []
        stack = sorted((i for i in range(len(elements)) if indeg[i] == 0), reverse=True)
        while stack:
            i = stack.pop()
            order.append(i)
            for j in sorted(succ[i], reverse=True):
                indeg[j] -= 1
                if indeg[j] == 0:
                    stack.append(j)
        if len(order) != len(elements):
            raise NotTransitive("relation has a cycle")
        up = [0] * len(elements)
        for i in reversed(order):
            b = 0
            for j in succ[i]:
                b |= up[j] | (1 << j)
            up[i] = b
        return cls(elements, tuple(up), idx)

    @classmethod
    def chain(cls, elements: Sequence[str]) -> "Poset":
        return cls.from_relation(elements, zip(elements, elements[1:]))

    @classmethod
    def antichain(cls, elements: Sequence[str]) -> "Poset":
        return cls.from_relation(elements, [])

    # -- queries -------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.elements)

    def lt(self, x: str, y: str) -> bool:
        return bool(self.up[self.index[x]] >> self.index[y] & 1)

    def comparable(self, x: str, y: str) -> bool:
        return x == y or self.lt(x, y) or self.lt(y, x)

    def incomparable(self, x: str, y: str) -> bool:
        return not self.comparable(x, y)

    def bits(self, xs: Iterable[str]) -> int:
        return _bits(self.index[x] for x in xs)

    def from_bits(self, b: int) -> list[str]:
        return [self.elements[i] for i in _iter_bits(b)]

    def down_bits(self) -> list[int]:
        cached = self.__dict__.get("_down")
        if cached is None:
            cached = [0] * self.n
            for i, b in enumerate(self.up):
                for j in _iter_bits(b):
                    cached[j] |= 1 << i
            object.__setattr__(self, "_down", cached)
        return cached

    def n_below(self, x: str) -> int:
        return bin(self.down_bits()[self.index[x]]).count("1")

    def covers(self) -> list[tuple[str, str]]:
        """Cover pairs ``x < y`` with nothing strictly in between."""
        out = []
        for i, b in enumerate(self.up):
            between = 0
            for j in _iter_bits(b):
                between |= self.up[j]
            for j in _iter_bits(b & ~between):
                out.append((self.elements[i], self.elements[j]))
        return out

    def is_chain(self, xs: Iterable[str]) -> bool:
        xs = list(xs)
        return all(self.comparable(x, y) for x, y in combinations(xs, 2))

    def is_antichain(self, xs: Iterable[str]) -> bool:
        xs = list(xs)
        return all(not self.comparable(x, y) for x, y in combinations(xs, 2))

    def minimal(self, xs: Iterable[str]) -> list[str]:
        xs = list(xs)
        b = self.bits(xs)
        down = self.down_bits()
        return [x for x in xs if not down[self.index[x]] & b]

    def induced(self, xs: Iterable[str]) -> "Poset":
        keep = set(xs)
        xs = [x for x in self.elements if x in keep]
        ix = [self.index[x] for x in xs]
        pos = {i: k for k, i in enumerate(ix)}
        up = []
        for i in ix:
            up.append(_bits(pos[j] for j in _iter_bits(self.up[i]) if j in pos))
        return Poset(tuple(xs), tuple(up))

    def longest_chain_length(self) -> int:
        return len(canonical_antichain_partition(self))

    def sorted_chain(self, xs: Iterable[str]) -> list[str]:
        """Elements of a chain listed bottom to top."""
        return sorted(xs, key=self.n_below)

    # -- serialization ---------------------------------------------------

    def to_dict(self, realizer: "Realizer | None" = None) -> dict:
        d = {"elements": list(self.elements), "covers": [list(c) for c in self.covers()]}
        if realizer is not None:
            d["realizer"] = [list(realizer.L1), list(realizer.L2)]
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> tuple["Poset", "Realizer | None"]:
        p = cls.from_relation([str(x) for x in d["elements"]],
                              [(str(x), str(y)) for x, y in d.get("covers", [])])
        r = None
        if d.get("realizer"):
            L1, L2 = d["realizer"]
            r = Realizer(tuple(map(str, L1)), tuple(map(str, L2)))
        return p, r

    def to_json(self, realizer=None) -> str:
        return json.dumps(self.to_dict(realizer), indent=1)


@dataclass(frozen=True)
class Realizer:
    L1: tuple[str, ...]
    L2: tuple[str, ...]

    def positions(self) -> tuple[dict[str, int], dict[str, int]]:
        return ({x: i for i, x in enumerate(self.L1)}, {x: i for i, x in enumerate(self.L2)})

    def restrict(self, xs: Iterable[str]) -> "Realizer":
        s = set(xs)
        return Realizer(tuple(x for x in self.L1 if x in s), tuple(x for x in self.L2 if x in s))

    def mirror(self) -> "Realizer":
        return Realizer(self.L2, self.L1)


# ---------------------------------------------------------------------------
# Posets from plane st-graphs
# ---------------------------------------------------------------------------


def poset_from_st_graph(d: DirectedPlaneGraph, must_be_reduced: bool = True) -> Poset:
    """Reachability order of a bipolar plane digraph."""
    if not check_bipolar(d):
        raise PosetError("digraph is not bipolar")
    if must_be_reduced and not check_transitively_reduced(d):
        raise NotReduced("digraph has a transitive arc")
    reach = reachability(d)
    return Poset(tuple(d.vertices), tuple(reach[v] for v in d.vertices))


def compute_realizer(d: DirectedPlaneGraph, poset: Poset | None = None) -> Realizer:
    """Left-first and right-first topological orders of a plane st-digraph."""
    L1 = tuple(left_first_order(d.vertices, d.succ, d.source))
    L2 = tuple(right_first_order(d.vertices, d.succ, d.source))
    r = Realizer(L1, L2)
    p = poset if poset is not None else poset_from_st_graph(d, must_be_reduced=False)
    if not verify_realizer(p, r):
        raise RealizerCheckFailed("left/right orders do not realize the reachability order")
    return r


def is_linear_extension(p: Poset, L: Sequence[str]) -> bool:
    if sorted(L) != sorted(p.elements):
        return False
    pos = {x: i for i, x in enumerate(L)}
    return all(pos[x] < pos[y] for x in p.elements for y in p.from_bits(p.up[p.index[x]]))


def verify_realizer(p: Poset, r: Realizer) -> bool:
    if not (is_linear_extension(p, r.L1) and is_linear_extension(p, r.L2)):
        return False
    pos1, pos2 = r.positions()
    for x, y in combinations(p.elements, 2):
        both = (pos1[x] < pos1[y]) == (pos2[x] < pos2[y])
        if both != p.comparable(x, y):
            return False
    return True


def poset_from_realizer(elements: Sequence[str], r: Realizer) -> Poset:
    pos2 = {x: i for i, x in enumerate(r.L2)}
    pairs = []
    for i, x in enumerate(r.L1):
        for y in r.L1[i + 1:]:
            if pos2[x] < pos2[y]:
                pairs.append((x, y))
    p = Poset.from_relation(r.L1, pairs)
    return p.induced(elements) if tuple(elements) != p.elements else p


def primary_conjugate(p: Poset, r: Realizer) -> tuple[Poset, Realizer]:
    """The poset with realizer ``[L1, reverse(L2)]``."""
    rq = Realizer(r.L1, tuple(reversed(r.L2)))
    return poset_from_realizer(p.elements, rq), rq


def left_of(p: Poset, r: Realizer, x: str, y: str) -> bool:
    if x == y:
        return True
    pos1, _ = r.positions()
    return p.incomparable(x, y) and pos1[x] < pos1[y]


# ---------------------------------------------------------------------------
# Canonical partitions
# ---------------------------------------------------------------------------


def canonical_antichain_partition(p: Poset, xs: Iterable[str] | None = None) -> list[list[str]]:
    """Repeatedly peel off the minimal elements (of the suborder on ``xs``)."""
    keep = set(p.elements if xs is None else xs)
    rest = [x for x in p.elements if x in keep]
    parts = []
    while rest:
        mins = p.minimal(rest)
        parts.append(mins)
        m = set(mins)
        rest = [x for x in rest if x not in m]
    return parts


def canonical_chain_partition(p: Poset, r: Realizer, xs: Iterable[str] | None = None) -> list[list[str]]:
    """Canonical antichain partition of the primary conjugate, chains bottom to top."""
    q, _ = primary_conjugate(p, r)
    parts = canonical_antichain_partition(q, xs)
    pos1, _ = r.positions()
    return [sorted(c, key=lambda x: pos1[x]) for c in parts]


def chain_cover_plus(p: Poset, chains: Sequence[Sequence[str]]) -> list[list[str]]:
    """Extend ``C_i`` by compatible elements of ``C_{i-1}, C_{i-2}, ...`` in that order."""
    out = []
    for i, c in enumerate(chains):
        cur = list(c)
        for j in range(i - 1, -1, -1):
            for x in chains[j]:
                if all(p.comparable(x, y) for y in cur):
                    cur.append(x)
        out.append(p.sorted_chain(cur))
    return out


def dominance_drawing(p: Poset, r: Realizer) -> dict[str, tuple[int, int]]:
    pos1, pos2 = r.positions()
    return {x: (pos1[x], pos2[x]) for x in p.elements}


def joins(p: Poset, x: str, y: str) -> list[str]:
    """Minimal common upper bounds (``x``, ``y`` count as bounds of themselves)."""
    ub = [z for z in p.elements if (z == x or p.lt(x, z)) and (z == y or p.lt(y, z))]
    return p.minimal(ub)


def meets(p: Poset, x: str, y: str) -> list[str]:
    lb = [z for z in p.elements if (z == x or p.lt(z, x)) and (z == y or p.lt(z, y))]
    b = p.bits(lb)
    return [z for z in lb if not p.up[p.index[z]] & b]


def is_lattice(p: Poset) -> bool:
    """Every pair has a join and a meet.

    Bits are re-indexed along a linear extension, so the earliest common
    upper bound is the only candidate for the join.
    """
    if p.n == 0:
        return False
    order = [x for level in canonical_antichain_partition(p) for x in level]
    pos = {x: i for i, x in enumerate(order)}
    n = p.n
    up = [0] * n
    down = [0] * n
    for x in p.elements:
        i = pos[x]
        b = 1 << i
        for j in _iter_bits(p.up[p.index[x]]):
            b |= 1 << pos[p.elements[j]]
        up[i] = b
    for i in range(n):
        for j in _iter_bits(up[i]):
            down[j] |= 1 << i
    for i in range(n):
        for j in range(i + 1, n):
            ub = up[i] & up[j]
            if not ub:
                return False
            z = (ub & -ub).bit_length() - 1
            if ub & ~up[z]:
                return False
            lb = down[i] & down[j]
            if not lb:
                return False
            z = lb.bit_length() - 1
            if lb & ~down[z]:
                return False
    return True
