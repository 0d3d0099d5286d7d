import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import antichain, chain, random_poset
from fewlines.gk import (FerrersShape, NotABoundaryPoint, OrthogonalPair, boundary_points, brute_force_orthogonal_pair,
                         brute_force_shape, canonical_orthogonal_pair, canonicalize_antichains, canonicalize_chains,
                         chain_columns, ferrers_shape, interior_weights, is_boundary_point, max_k_antichain_value,
                         max_l_chain_value, min_sum_boundary_point, orthogonal_pair, verify_orthogonal)
from fewlines.poset import Poset, Realizer, canonical_antichain_partition, verify_realizer


def fam(pair):
    return [set(a) for a in pair.antichains], [set(c) for c in pair.chains]


def test_p5_chain_values(p5):
    p, _ = p5
    assert [max_l_chain_value(p, l) for l in (1, 2, 3)] == [3, 4, 5]
    assert chain_columns(p) == [3, 1, 1]


@pytest.mark.parametrize("m,l", [(4, 1), (4, 3), (4, 6), (1, 2)])
def test_antichain_chain_values(m, l):
    assert max_l_chain_value(antichain(m), l) == min(l, m)


def test_chain_value():
    assert max_l_chain_value(chain(6), 1) == 6


def test_shapes_of_small_examples(p5):
    p, r = p5
    assert ferrers_shape(p, r).rows == (3, 1, 1)
    assert brute_force_shape(p).rows == (3, 1, 1)
    assert ferrers_shape(chain(4)).rows == (1, 1, 1, 1)
    assert ferrers_shape(antichain(4)).rows == (4,)
    assert brute_force_shape(chain(3)).rows == (1, 1, 1)
    assert brute_force_shape(antichain(3)).rows == (3,)


def test_boundary_points():
    assert min_sum_boundary_point(FerrersShape((3, 1, 1))) == (1, 1)
    big = FerrersShape((6, 3, 3, 1, 1))
    assert big.n == 14 and str(big) == "6+3+3+1+1"
    assert set(boundary_points(big)) == {(1, 3), (3, 1)}
    k, l = min_sum_boundary_point(big)
    assert k + l == 4 and (k + l + 1) ** 2 <= 2 * 14
    assert min_sum_boundary_point(FerrersShape((5,))) == (1, 0)
    assert is_boundary_point(big, 3, 1) and not is_boundary_point(big, 2, 1)


def test_staircase_shape_misses_the_stronger_bound():
    # x<z, y alone: shape 2+1, both boundary points have k+l = 2 and 3**2 > 2*3
    p = Poset.from_relation("xyz", [("x", "z")])
    shape = ferrers_shape(p)
    assert shape.rows == (2, 1)
    k, l = min_sum_boundary_point(shape)
    assert k + l == 2 and (k + l) ** 2 < 6 < (k + l + 1) ** 2


def test_p5_pair(p5):
    p, r = p5
    pair = orthogonal_pair(p, 1, 1, interior_weights(p, r))
    assert fam(pair) == ([{"a", "v", "b"}], [{"s", "v", "t"}])
    assert verify_orthogonal(p, pair)
    oracle = brute_force_orthogonal_pair(p, 1, 1)
    assert verify_orthogonal(p, oracle) and fam(oracle)[0] == [{"a", "v", "b"}]
    # any (1,1) pair of P5 must use the middle antichain
    assert fam(orthogonal_pair(p, 1, 1))[0] == [{"a", "v", "b"}]


def test_verify_orthogonal_negative(p5):
    p, _ = p5
    good = OrthogonalPair((("a", "v", "b"),), (("s", "v", "t"),))
    assert verify_orthogonal(p, good)
    assert not verify_orthogonal(p, OrthogonalPair(good.antichains, (("s", "t"),)))
    assert not verify_orthogonal(p, OrthogonalPair((("a", "v"),), good.chains))


def test_trivial_pairs():
    c = chain(4)
    pair = orthogonal_pair(c, 0, 1)
    assert pair.antichains == () and set(pair.chains[0]) == set(c.elements)
    a = antichain(4)
    pair = orthogonal_pair(a, 1, 0)
    assert pair.chains == () and set(pair.antichains[0]) == set(a.elements)


def test_not_a_boundary_point(p5):
    p, _ = p5
    with pytest.raises(NotABoundaryPoint):
        orthogonal_pair(p, 2, 0)


def test_uncrossing_four_chain():
    c = Poset.from_relation("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
    pair = OrthogonalPair((("c",), ("b",)), (("a", "b", "c", "d"),))
    assert verify_orthogonal(c, pair)
    out = canonicalize_antichains(c, pair)
    assert out.antichains == (("b",), ("c",))
    assert verify_orthogonal(c, out)


def test_push_down():
    p = Poset.from_relation("abcde", [("a", "b"), ("c", "d")])
    pair = OrthogonalPair((("a", "c"), ("b", "d", "e")), ())
    assert verify_orthogonal(p, pair)
    out = canonicalize_antichains(p, pair)
    assert fam(out)[0] == [{"a", "c", "e"}, {"b", "d"}]
    assert fam(out)[0] == [set(x) for x in canonical_antichain_partition(p)]


def test_fence_chain_uncrossing():
    p = Poset.from_relation("abcd", [("a", "b"), ("c", "b"), ("c", "d")])
    r = Realizer(tuple("acbd"), tuple("cdab"))
    assert verify_realizer(p, r)
    pair = OrthogonalPair((("a", "c"), ("b", "d")), (("c", "d"), ("a", "b")))
    assert verify_orthogonal(p, pair)
    out = canonicalize_chains(p, r, pair)
    assert out.chains == (("a", "b"), ("c", "d"))
    assert canonicalize_chains(p, r, out) == out


def test_p5_canonical_is_fixpoint(p5):
    p, r = p5
    pair = orthogonal_pair(p, 1, 1, interior_weights(p, r))
    assert canonicalize_antichains(p, pair) == pair
    assert canonicalize_chains(p, r, pair) == pair


def test_interior_weights(p5):
    assert interior_weights(*p5) == {"s": 0, "a": 0, "t": 0, "b": 0, "v": 1}


def _min_peeling_holds(p, antichains):
    union = set().union(*map(set, antichains))
    seen = set()
    for a in antichains:
        rest = [x for x in p.elements if x in union - seen]
        if set(a) != {x for x in rest if not any(p.lt(y, x) for y in rest)}:
            return False
        seen |= set(a)
    return True


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 9), st.integers(0, 10 ** 6), st.booleans())
def test_against_brute_force(n, seed, two_dim):
    p, r = random_poset(n, seed, two_dim)
    shape = ferrers_shape(p, r)
    assert shape == brute_force_shape(p)
    assert sum(min_sum_boundary_point(shape)) ** 2 < 2 * n
    if r is not None:
        for k in range(1, len(shape.rows) + 1):
            assert max_k_antichain_value(p, k, r) == sum(shape.rows[:k])
    for k, l in boundary_points(shape):
        pair = orthogonal_pair(p, k, l)
        assert pair.k == k and pair.l == l and verify_orthogonal(p, pair)
        ca = canonicalize_antichains(p, pair)
        assert verify_orthogonal(p, ca) and _min_peeling_holds(p, ca.antichains)
        assert canonicalize_antichains(p, ca) == ca
        if r is not None:
            cc = canonicalize_chains(p, r, ca)
            assert verify_orthogonal(p, cc) and canonicalize_chains(p, r, cc) == cc


def test_brute_force_pair_is_orthogonal():
    for seed in range(15):
        p, _ = random_poset(7, seed)
        shape = brute_force_shape(p)
        k, l = min_sum_boundary_point(shape)
        assert verify_orthogonal(p, brute_force_orthogonal_pair(p, k, l))


def test_canonical_pair_on_corpus(red_posets):
    for name, (p, r) in red_posets.items():
        shape = ferrers_shape(p, r)
        k, l = min_sum_boundary_point(shape)
        pair = canonical_orthogonal_pair(p, r, k, l)
        assert verify_orthogonal(p, pair), name
        assert _min_peeling_holds(p, pair.antichains), name


def test_pair_json():
    pair = OrthogonalPair((("x", "y"),), (("x",), ("y",)))
    assert OrthogonalPair.from_dict(pair.to_dict()) == pair
