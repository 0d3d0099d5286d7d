from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import antichain, chain, random_poset
from fewlines.digraph import (check_bipolar, check_transitively_reduced, from_orders, is_acyclic,
                              left_first_order, right_first_order)
from fewlines.poset import (NotReduced, Poset, Realizer, canonical_antichain_partition, canonical_chain_partition,
                            chain_cover_plus, compute_realizer, dominance_drawing, is_lattice, joins, left_of,
                            meets, poset_from_realizer, poset_from_st_graph, primary_conjugate, verify_realizer)


def diamond():
    return from_orders("sxyt", {"s": ["x", "y"], "x": ["t"], "y": ["t"], "t": []}, "s", "t")


# -- digraphs ---------------------------------------------------------------

def test_diamond_orders():
    d = diamond()
    assert left_first_order(d.vertices, d.succ, "s") == list("sxyt")
    assert right_first_order(d.vertices, d.succ, "s") == list("syxt")
    assert check_bipolar(d) and check_transitively_reduced(d)


def test_cyclic_triangle_not_bipolar():
    d = from_orders("abc", {"a": ["b"], "b": ["c"], "c": ["a"]}, "a", "c")
    assert not is_acyclic(d)
    assert not check_bipolar(d)


def test_transitive_arc_detected():
    d = from_orders("abc", {"a": ["b", "c"], "b": ["c"], "c": []}, "a", "c")
    assert not check_transitively_reduced(d)
    with pytest.raises(NotReduced):
        poset_from_st_graph(d)
    assert poset_from_st_graph(d, must_be_reduced=False).lt("a", "c")


def test_single_arc():
    d = from_orders("uw", {"u": ["w"], "w": []}, "u", "w")
    assert check_transitively_reduced(d)
    p = poset_from_st_graph(d)
    assert p.lt("u", "w") and not p.lt("w", "u")
    assert compute_realizer(d) == Realizer(("u", "w"), ("u", "w"))


# -- P5 ----------------------------------------------------------------------

def test_p5_order(p5):
    p, r = p5
    mid = ["a", "v", "b"]
    assert all(p.lt("s", x) and p.lt(x, "t") for x in mid)
    assert p.is_antichain(mid)
    assert r == Realizer(tuple("savbt"), tuple("sbvat"))
    assert verify_realizer(p, r)
    assert not verify_realizer(p, Realizer(r.L1, r.L1))


def test_p5_conjugate(p5):
    q, _ = primary_conjugate(*p5)
    assert q.lt("a", "v") and q.lt("v", "b")
    for x in "savbt":
        assert not q.comparable("s", x) or x == "s"
        assert not q.comparable("t", x) or x == "t"
    p, r = p5
    assert left_of(p, r, "a", "v") and left_of(p, r, "v", "b")
    assert not left_of(p, r, "b", "a") and not left_of(p, r, "s", "a")


def test_p5_partitions(p5):
    p, r = p5
    assert [set(a) for a in canonical_antichain_partition(p)] == [{"s"}, {"a", "v", "b"}, {"t"}]
    chains = canonical_chain_partition(p, r)
    assert chains == [["s", "a", "t"], ["v"], ["b"]]
    assert chain_cover_plus(p, chains) == [["s", "a", "t"], ["s", "v", "t"], ["s", "b", "t"]]


def test_p5_lattice(p5):
    p, _ = p5
    assert is_lattice(p)
    assert joins(p, "a", "v") == ["t"] and meets(p, "a", "b") == ["s"]


def test_small_lattice_checks():
    assert not is_lattice(antichain(2))
    assert is_lattice(chain(4))
    bowtie = Poset.from_relation("abcd", [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    assert not is_lattice(bowtie)


def test_trivial_partitions():
    assert canonical_antichain_partition(antichain(3)) == [["a0", "a1", "a2"]]
    assert canonical_antichain_partition(chain(4)) == [["c0"], ["c1"], ["c2"], ["c3"]]
    two = antichain(2)
    r = Realizer(("a0", "a1"), ("a1", "a0"))
    assert verify_realizer(two, r)
    assert canonical_chain_partition(two, r) == [["a0"], ["a1"]]
    c = chain(3)
    rc = Realizer(c.elements, c.elements)
    assert canonical_chain_partition(c, rc) == [list(c.elements)]
    q, _ = primary_conjugate(c, rc)
    assert q.is_antichain(q.elements)
    q2, _ = primary_conjugate(two, r)
    assert q2.is_chain(q2.elements)


def test_dominance_drawing_small():
    d = diamond()
    p = poset_from_st_graph(d)
    r = compute_realizer(d, p)
    assert dominance_drawing(p, r) == {"s": (0, 0), "x": (1, 2), "y": (2, 1), "t": (3, 3)}
    c = chain(2)
    assert dominance_drawing(c, Realizer(c.elements, c.elements)) == {"c0": (0, 0), "c1": (1, 1)}


def test_json_roundtrip(p5):
    p, r = p5
    q, r2 = Poset.from_dict(p.to_dict(r))
    assert r2 == r and set(q.covers()) == set(p.covers())


# -- corpus-wide properties --------------------------------------------------

def test_corpus_realizers(red_posets):
    for name, (p, r) in red_posets.items():
        assert verify_realizer(p, r), name
        assert is_lattice(p), name


def _longest_chain(p):
    best = {}
    for x in sorted(p.elements, key=p.n_below):
        best[x] = 1 + max((best[y] for y in p.elements if p.lt(y, x)), default=0)
    return max(best.values(), default=0)


def _lattice_brute(p):
    for x, y in combinations(p.elements, 2):
        ub = [z for z in p.elements if (z == x or p.lt(x, z)) and (z == y or p.lt(y, z))]
        lb = [z for z in p.elements if (z == x or p.lt(z, x)) and (z == y or p.lt(z, y))]
        if len(p.minimal(ub)) != 1:
            return False
        if len([z for z in lb if not any(p.lt(z, w) for w in lb)]) != 1:
            return False
    return True


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 10), st.integers(0, 10 ** 6), st.booleans())
def test_random_poset_properties(n, seed, two_dim):
    p, r = random_poset(n, seed, two_dim)
    parts = canonical_antichain_partition(p)
    assert len(parts) == _longest_chain(p)
    for j in range(1, len(parts)):
        assert all(any(p.lt(x, y) for x in parts[j - 1]) for y in parts[j])
    assert is_lattice(p) == _lattice_brute(p)
    if r is not None:
        assert verify_realizer(p, r)
        q, rq = primary_conjugate(p, r)
        for x, y in combinations(p.elements, 2):
            assert q.comparable(x, y) != p.comparable(x, y)
        chains = canonical_chain_partition(p, r)
        assert all(p.is_chain(c) for c in chains)
        assert sorted(x for c in chains for x in c) == sorted(p.elements)
        # C1 is a maximal chain
        c1 = set(chains[0])
        assert not any(all(p.comparable(x, y) for y in c1) for x in p.elements if x not in c1)
        assert poset_from_realizer(p.elements, r).up == p.up
