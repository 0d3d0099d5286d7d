"""Greene-Kleitman theory: shapes, optimal chain/antichain families, orthogonal pairs.

The flow network splits every element ``x`` into ``x_in -> x_out`` (capacity
1, cost -1).  ``x_out -> y_in`` arcs exist for every ``x < y`` (transitive
closure), every ``x_in`` is fed by the source and every ``x_out`` drains to
the sink, and a zero-cost source->sink bypass lets the flow value be any
``l``.  A min-cost flow of value ``l`` covers ``c_l`` elements with ``l``
disjoint chains; its dual potentials yield a family of antichains orthogonal
to those chains.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import sqrt
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import bellman_ford, dijkstra

from .poset import (Poset, Realizer, _iter_bits, canonical_antichain_partition,
                    primary_conjugate)


class GKError(RuntimeError):
    pass


class NonconcaveSequence(GKError):
    pass


class ExtractionFailed(GKError):
    pass


class NotABoundaryPoint(ValueError):
    pass


# ---------------------------------------------------------------------------
# Shapes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FerrersShape:
    rows: tuple[int, ...]

    def __post_init__(self):
        r = self.rows
        if any(x <= 0 for x in r) or any(a < b for a, b in zip(r, r[1:])):
            raise NonconcaveSequence(f"rows {r} do not form a partition")

    @classmethod
    def from_columns(cls, cols: Sequence[int]) -> "FerrersShape":
        return cls(tuple(_conjugate(cols)))

    @property
    def columns(self) -> tuple[int, ...]:
        return tuple(_conjugate(self.rows))

    @property
    def n(self) -> int:
        return sum(self.rows)

    def row(self, i: int) -> int:
        """1-based row length, 0 beyond the shape."""
        return self.rows[i - 1] if 1 <= i <= len(self.rows) else 0

    def column(self, j: int) -> int:
        cols = self.columns
        return cols[j - 1] if 1 <= j <= len(cols) else 0

    def __str__(self) -> str:
        return "+".join(map(str, self.rows)) or "0"


def _conjugate(parts: Sequence[int]) -> list[int]:
    parts = [p for p in parts if p > 0]
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise NonconcaveSequence(f"sequence {list(parts)} is not weakly decreasing")
    if not parts:
        return []
    return [sum(1 for p in parts if p >= j) for j in range(1, parts[0] + 1)]


def boundary_points(shape: FerrersShape) -> list[tuple[int, int]]:
    """All ``(k, l)`` with ``k`` rows and ``l`` columns covering the shape and ``k + l`` minimal."""
    cands = [(shape.column(l + 1), l) for l in range(len(shape.rows[:1]) and shape.rows[0] + 1)]
    if not cands:
        return [(0, 0)]
    best = min(k + l for k, l in cands)
    return [(k, l) for k, l in cands if k + l == best]


def min_sum_boundary_point(shape: FerrersShape) -> tuple[int, int]:
    """Minimal ``k + l``; ties go to the smaller number of chains ``l``."""
    k, l = boundary_points(shape)[0]
    if shape.n and not (k + l < sqrt(2 * shape.n)):
        raise GKError(f"boundary point {(k, l)} violates k + l < sqrt(2n) for n={shape.n}")
    return k, l


def is_boundary_point(shape: FerrersShape, k: int, l: int) -> bool:
    if l == 0:
        return k == shape.column(1)
    return shape.column(l + 1) <= k <= shape.column(l)


# ---------------------------------------------------------------------------
# Min-cost flow
# ---------------------------------------------------------------------------

_EPS = 1e-7


class ChainFlow:
    """Successive shortest augmenting paths with node potentials.

    Node ``0`` is the source, ``1`` the sink, element ``i`` has nodes
    ``2 + 2i`` (in) and ``3 + 2i`` (out).  Optional non-negative integer
    ``weights`` break ties between maximum chain families: element ``x``
    then costs ``-(M + weights[x])`` with ``M`` larger than any weight sum,
    so the number of covered elements stays the primary objective.
    """

    def __init__(self, p: Poset, weights: Mapping[str, int] | None = None):
        self.p = p
        n = p.n
        self.N = 2 * n + 2
        w = [int((weights or {}).get(x, 0)) for x in p.elements]
        if any(v < 0 for v in w):
            raise ValueError("weights must be non-negative")
        self.M = sum(w) + 1 if weights else 1
        self.unit = not weights
        big = n + 1
        tail, head, cap, cost = [], [], [], []

        def arc(u, v, c, w):
            tail.append(u)
            head.append(v)
            cap.append(c)
            cost.append(w)

        for i in range(n):
            arc(2 + 2 * i, 3 + 2 * i, 1, -(self.M + w[i]))
        for i in range(n):
            arc(0, 2 + 2 * i, big, 0)
            arc(3 + 2 * i, 1, big, 0)
        for i, b in enumerate(p.up):
            for j in _iter_bits(b):
                arc(3 + 2 * i, 2 + 2 * j, big, 0)
        arc(0, 1, big, 0)
        self.tail = np.array(tail, dtype=np.int64)
        self.head = np.array(head, dtype=np.int64)
        self.cap = np.array(cap, dtype=np.int64)
        self.cost = np.array(cost, dtype=np.int64)
        self.unit_cost = np.where(self.cost < 0, -1, 0).astype(np.int64)
        self.flow = np.zeros(len(tail), dtype=np.int64)
        self.value = 0
        self.total_cost = 0
        self.steps: list[int] = []
        self.pi = self._initial_potentials()

    def _initial_potentials(self) -> np.ndarray:
        p = self.p
        order = canonical_antichain_partition(p)
        pi = np.zeros(self.N, dtype=np.int64)
        down = p.down_bits()
        for level in order:
            for x in level:
                i = p.index[x]
                best = 0
                for j in _iter_bits(down[i]):
                    best = min(best, int(pi[3 + 2 * j]))
                pi[2 + 2 * i] = best
                pi[3 + 2 * i] = best + int(self.cost[i])
        pi[1] = min(0, int(pi[3::2].min())) if p.n else 0
        return pi

    def _residual(self, cost=None):
        cost = self.cost if cost is None else cost
        fwd = self.flow < self.cap
        bwd = self.flow > 0
        u = np.concatenate([self.tail[fwd], self.head[bwd]])
        v = np.concatenate([self.head[fwd], self.tail[bwd]])
        c = np.concatenate([cost[fwd], -cost[bwd]])
        ids = np.concatenate([np.nonzero(fwd)[0], np.nonzero(bwd)[0]])
        sign = np.concatenate([np.ones(fwd.sum(), dtype=np.int64), -np.ones(bwd.sum(), dtype=np.int64)])
        return u, v, c, ids, sign

    def _distances(self, source: int, want_pred: bool = False):
        u, v, c, ids, sign = self._residual()
        red = c + self.pi[u] - self.pi[v]
        if red.size and red.min() < 0:
            raise GKError("potentials lost feasibility")
        m = csr_matrix((red.astype(float) + _EPS, (u, v)), shape=(self.N, self.N))
        if want_pred:
            dist, pred = dijkstra(m, indices=source, return_predecessors=True)
        else:
            dist, pred = dijkstra(m, indices=source), None
        finite = np.isfinite(dist)
        dr = np.where(finite, np.rint(np.where(finite, dist, 0)), 0).astype(np.int64)
        true = dr + self.pi - self.pi[source]
        return true, finite, pred, (u, v, ids, sign)

    def augment(self) -> int:
        """Push one unit along a shortest path; returns its (true) cost."""
        d, finite, pred, (u, v, ids, sign) = self._distances(0, want_pred=True)
        if not finite.all():
            raise GKError("residual network has unreachable nodes")
        lookup = {}
        for a, b, i, s in zip(u.tolist(), v.tolist(), ids.tolist(), sign.tolist()):
            lookup[(a, b)] = (i, s)
        node = 1
        while node != 0:
            prev = int(pred[node])
            i, s = lookup[(prev, node)]
            self.flow[i] += s
            node = prev
        self.pi = d
        step = int(d[1])
        before = self.covered
        self.value += 1
        self.total_cost += step
        if not self.unit:
            step = before - self.covered
        self.steps.append(step)
        return step

    @property
    def covered(self) -> int:
        return -self.total_cost // self.M if self.M > 1 else -self.total_cost

    def _unit_distances(self, sources: list[int]) -> np.ndarray:
        """Exact shortest distances for unit costs (no valid potentials needed)."""
        if self.unit:
            runs = [self._distances(s) for s in sources]
            return np.vstack([r[0] for r in runs]), np.vstack([r[1] for r in runs])
        u, v, c, _, _ = self._residual(self.unit_cost)
        m = csr_matrix((c.astype(float) + _EPS, (u, v)), shape=(self.N, self.N))
        dist = np.atleast_2d(bellman_ford(m, indices=sources))
        finite = np.isfinite(dist)
        return np.where(finite, np.rint(np.where(finite, dist, 0)), 0).astype(np.int64), finite

    def next_column(self) -> int:
        """Marginal number of elements a further chain would add."""
        d, _ = self._unit_distances([0])
        return -int(d[0][1])

    def chains(self) -> list[list[str]]:
        p = self.p
        out_arcs: dict[int, list[int]] = {}
        for a in np.nonzero(self.flow > 0)[0].tolist():
            out_arcs.setdefault(int(self.tail[a]), []).append(int(self.head[a]))
        chains = []
        for start in sorted(w for w in out_arcs.get(0, []) if w != 1):
            chain = []
            node = start
            while node != 1:
                if node % 2 == 0:
                    chain.append(p.elements[(node - 2) // 2])
                nxt = out_arcs[node]
                node = nxt.pop()
            if chain:
                chains.append(chain)
        if sum(len(c) for c in chains) != self.covered or len({x for c in chains for x in c}) != self.covered:
            raise ExtractionFailed("flow paths do not decompose into disjoint chains")
        return chains

    def potentials(self, K: int | None = None) -> np.ndarray:
        """Optimal dual values ``p = -d`` with ``p(source) = 0`` and ``p(sink) = K``."""
        d, fin = self._unit_distances([0, 1])
        d_s, d_t, fin_t = d[0], d[1], fin[1]
        k_flow = -int(d_s[1])
        if K is None or K == k_flow:
            return -d_s
        alt = np.where(fin_t, K - d_t, np.iinfo(np.int64).min // 4)
        return np.maximum(-d_s, alt)


def max_l_chain_value(p: Poset, l: int) -> int:
    if l < 0:
        raise ValueError("l must be non-negative")
    f = ChainFlow(p)
    for _ in range(l):
        if f.augment() >= 0:
            break
    return f.covered


def chain_columns(p: Poset) -> list[int]:
    """Column lengths ``c_l - c_{l-1}`` until no chain adds anything."""
    f = ChainFlow(p)
    cols = []
    while f.value < p.n:
        step = f.augment()
        if step >= 0:
            break
        cols.append(-step)
    return cols


def max_k_antichain_value(p: Poset, k: int, realizer: Realizer) -> int:
    """Largest union of ``k`` antichains, as chains of the conjugate order."""
    q, _ = primary_conjugate(p, realizer)
    return max_l_chain_value(q, k)


def ferrers_shape(p: Poset, realizer: Realizer | None = None) -> FerrersShape:
    cols = chain_columns(p)
    if any(a < b for a, b in zip(cols, cols[1:])) or sum(cols) != p.n:
        raise NonconcaveSequence(f"chain increments {cols} are not a partition of {p.n}")
    shape = FerrersShape.from_columns(cols)
    if realizer is not None:
        q, _ = primary_conjugate(p, realizer)
        rows = chain_columns(q)
        if tuple(rows) != shape.rows:
            raise NonconcaveSequence(f"antichain side {rows} disagrees with chain side {shape.rows}")
    return shape


# ---------------------------------------------------------------------------
# Orthogonal pairs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrthogonalPair:
    antichains: tuple[tuple[str, ...], ...]
    chains: tuple[tuple[str, ...], ...]

    @property
    def k(self) -> int:
        return len(self.antichains)

    @property
    def l(self) -> int:
        return len(self.chains)

    def to_dict(self) -> dict:
        return {"antichains": [list(a) for a in self.antichains], "chains": [list(c) for c in self.chains]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, d) -> "OrthogonalPair":
        return cls(tuple(tuple(map(str, a)) for a in d["antichains"]),
                   tuple(tuple(map(str, c)) for c in d["chains"]))


def _make_pair(p: Poset, antichains, chains) -> OrthogonalPair:
    A = tuple(tuple(x for x in p.elements if x in set(a)) for a in antichains)
    C = tuple(tuple(p.sorted_chain(c)) for c in chains)
    return OrthogonalPair(A, C)


def verify_orthogonal(p: Poset, pair: OrthogonalPair) -> bool:
    A = [set(a) for a in pair.antichains]
    C = [set(c) for c in pair.chains]
    if sum(map(len, A)) != len(set().union(*A)) or sum(map(len, C)) != len(set().union(*C)):
        return False
    if set().union(*A, *C) != set(p.elements):
        return False
    if not all(p.is_antichain(a) for a in A) or not all(p.is_chain(c) for c in C):
        return False
    return all(len(a & c) == 1 for a in A for c in C)


def orthogonal_pair(p: Poset, k: int, l: int, prefer: Mapping[str, int] | None = None) -> OrthogonalPair:
    """Orthogonal ``k``-antichain / ``l``-chain families for a boundary point ``(k, l)``.

    ``prefer`` gives optional tie-breaking weights for the chain family.
    """
    f = ChainFlow(p, prefer)
    for _ in range(l):
        f.augment()
    next_col = f.next_column()
    upper = -f.steps[-1] if f.steps else next_col
    if f.steps and f.steps[-1] >= 0:
        raise NotABoundaryPoint(f"({k}, {l}): no {l} nonempty disjoint chains")
    if not next_col <= k <= upper:
        raise NotABoundaryPoint(f"({k}, {l}) is not on the boundary: need {next_col} <= k <= {upper}")
    chains = f.chains()
    pot = f.potentials(k)
    levels: list[list[str]] = [[] for _ in range(k)]
    for i, x in enumerate(p.elements):
        lo, hi = int(pot[2 + 2 * i]), int(pot[3 + 2 * i])
        if hi > lo:
            levels[lo].append(x)  # one level per element suffices
    pair = _make_pair(p, levels, chains)
    if any(not a for a in pair.antichains) or not verify_orthogonal(p, pair):
        raise ExtractionFailed(f"extracted families at ({k}, {l}) are not orthogonal")
    return pair


# ---------------------------------------------------------------------------
# Canonicalization
# ---------------------------------------------------------------------------


def _uncross(p: Poset, fam: list[set[str]]) -> None:
    changed = True
    while changed:
        changed = False
        for i, j in combinations(range(len(fam)), 2):
            Bi = {y for y in fam[i] if any(p.lt(x, y) for x in fam[j])}
            Bj = {x for x in fam[j] if any(p.lt(x, y) for y in fam[i])}
            if Bi or Bj:
                fam[i] = (fam[i] - Bi) | Bj
                fam[j] = (fam[j] - Bj) | Bi
                changed = True


def _push_down(p: Poset, fam: list[set[str]]) -> None:
    changed = True
    while changed:
        changed = False
        for i in range(len(fam) - 1):
            B = {y for y in fam[i + 1] if not any(p.lt(x, y) for x in fam[i])}
            if B:
                fam[i + 1] -= B
                fam[i] |= B
                changed = True


def _canonical_family(p: Poset, family: Sequence[Iterable[str]]) -> list[set[str]]:
    fam = [set(a) for a in family]
    _uncross(p, fam)
    _push_down(p, fam)
    if canonical_antichain_partition(p, set().union(*fam)) != [
            [x for x in p.elements if x in a] for a in fam if a]:
        raise GKError("uncrossing/push-down did not reach the canonical partition")
    return fam


def canonicalize_antichains(p: Poset, pair: OrthogonalPair) -> OrthogonalPair:
    fam = _canonical_family(p, pair.antichains)
    out = _make_pair(p, fam, pair.chains)
    if not verify_orthogonal(p, out):
        raise GKError("antichain canonicalization broke orthogonality")
    return out


def canonicalize_chains(p: Poset, r: Realizer, pair: OrthogonalPair) -> OrthogonalPair:
    q, _ = primary_conjugate(p, r)
    fam = _canonical_family(q, pair.chains)
    out = _make_pair(p, pair.antichains, fam)
    if not verify_orthogonal(p, out):
        raise GKError("chain canonicalization broke orthogonality")
    return out


def interior_weights(p: Poset, r: Realizer) -> dict[str, int]:
    """1 for elements with incomparable elements on both sides, 0 on the outer boundary chains."""
    pos1, _ = r.positions()
    out = {}
    for x in p.elements:
        left = right = False
        for y in p.elements:
            if y != x and p.incomparable(x, y):
                if pos1[y] < pos1[x]:
                    left = True
                else:
                    right = True
        out[x] = int(left and right)
    return out


def canonical_orthogonal_pair(p: Poset, r: Realizer, k: int, l: int, prefer=None) -> OrthogonalPair:
    pair = orthogonal_pair(p, k, l, prefer)
    return canonicalize_chains(p, r, canonicalize_antichains(p, pair))


# ---------------------------------------------------------------------------
# Exhaustive oracles
# ---------------------------------------------------------------------------


def _family_masks(p: Poset, chains: bool) -> list[bool]:
    n = p.n
    ok = [True] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        rest = m ^ low
        if not ok[rest]:
            ok[m] = False
            continue
        i = low.bit_length() - 1
        comp = p.up[i] | p.down_bits()[i]
        ok[m] = (rest & ~comp) == 0 if chains else (rest & comp) == 0
    return ok


def _cover_numbers(ok: list[bool], n: int) -> list[int]:
    """Minimum number of parts (each with ``ok``) partitioning every mask."""
    f = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        rest = m ^ low
        best = n + 1
        sub = rest
        while True:
            part = sub | low
            if ok[part]:
                best = min(best, f[m ^ part] + 1)
            if sub == 0:
                break
            sub = (sub - 1) & rest
        f[m] = best
    return f


def _best_values(f: list[int], n: int) -> list[int]:
    best = [0] * (n + 1)
    for m in range(1 << n):
        c = bin(m).count("1")
        for l in range(f[m], n + 1):
            if c > best[l]:
                best[l] = c
    return best


def brute_force_shape(p: Poset) -> FerrersShape:
    n = p.n
    if n > 12:
        raise ValueError("brute force shape needs n <= 12")
    if n == 0:
        return FerrersShape(())
    c = _best_values(_cover_numbers(_family_masks(p, True), n), n)
    a = _best_values(_cover_numbers(_family_masks(p, False), n), n)
    cols = [c[l] - c[l - 1] for l in range(1, n + 1)]
    rows = [a[k] - a[k - 1] for k in range(1, n + 1)]
    shape = FerrersShape.from_columns([x for x in cols if x])
    if tuple(x for x in rows if x) != shape.rows:
        raise NonconcaveSequence("chain and antichain sides disagree")
    return shape


def _partitions(mask: int, ok: list[bool], parts: int):
    if mask == 0:
        if parts == 0:
            yield []
        return
    if parts == 0:
        return
    low = mask & -mask
    rest = mask ^ low
    sub = rest
    while True:
        part = sub | low
        if ok[part]:
            for tail in _partitions(mask ^ part, ok, parts - 1):
                yield [part] + tail
        if sub == 0:
            break
        sub = (sub - 1) & rest


def brute_force_orthogonal_pair(p: Poset, k: int, l: int) -> OrthogonalPair:
    """First orthogonal pair in a deterministic exhaustive search."""
    n = p.n
    if n > 9:
        raise ValueError("brute force pair needs n <= 9")
    full = (1 << n) - 1
    chain_ok = _family_masks(p, True)
    anti_ok = _family_masks(p, False)
    for cmask in range(1 << n):
        for cparts in _partitions(cmask, chain_ok, l):
            rest = full & ~cmask
            cands = [a for a in range(1, 1 << n) if anti_ok[a]
                     and all(bin(a & c).count("1") == 1 for c in cparts)]
            sol = _cover_antichains(cands, rest, k, 0, [])
            if sol is not None:
                return _make_pair(p, [p.from_bits(a) for a in sol], [p.from_bits(c) for c in cparts])
    raise NotABoundaryPoint(f"no orthogonal pair with k={k}, l={l}")


def _cover_antichains(cands, need, k, used, chosen):
    if k == 0:
        return chosen if need == 0 else None
    if need:
        low = need & -need
        pool = [a for a in cands if a & low and not a & used]
    else:
        pool = [a for a in cands if not a & used]
    for a in pool:
        got = _cover_antichains(cands, need & ~a, k - 1, used | a, chosen + [a])
        if got is not None:
            return got
    return None
