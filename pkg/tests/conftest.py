import random

import pytest

from fewlines.graph import delete_outer_edge, generate_instance, icosahedron, octahedron, pyr5
from fewlines.poset import Poset, Realizer, poset_from_realizer, poset_from_st_graph
from fewlines.transversal import RED, color_subgraph, compute_transversal_structure

CORPUS_SIZES = (5, 6, 7, 8, 9, 10, 12, 15, 20, 30, 45, 60, 80)


def build_corpus():
    """Named 4-gon instances: the fixed ones plus seeded random ones."""
    out = {"PYR5": pyr5(), "OCT6-": delete_outer_edge(octahedron()), "ICO12-": delete_outer_edge(icosahedron())}
    for n in CORPUS_SIZES:
        for seed in (0, 1):
            out[f"gen{n}s{seed}"] = generate_instance(n, seed)
    return out


def red_poset_of(g):
    from fewlines.poset import compute_realizer

    ts = compute_transversal_structure(g)
    red = color_subgraph(g, ts, RED)
    p = poset_from_st_graph(red)
    return p, compute_realizer(red, p)


def random_poset(n, seed, two_dim=False):
    """Random poset on ``n`` elements; with ``two_dim`` also returns a realizer."""
    rng = random.Random(seed)
    names = [f"x{i}" for i in range(n)]
    if two_dim:
        L2 = names[:]
        rng.shuffle(L2)
        r = Realizer(tuple(names), tuple(L2))
        return poset_from_realizer(names, r), r
    prob = rng.choice((0.15, 0.3, 0.5))
    pairs = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < prob]
    return Poset.from_relation(names, pairs), None


def chain(m):
    names = [f"c{i}" for i in range(m)]
    return Poset.from_relation(names, list(zip(names, names[1:])))


def antichain(m):
    return Poset.from_relation([f"a{i}" for i in range(m)], [])


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture(scope="session")
def red_posets(corpus):
    return {name: red_poset_of(g) for name, g in corpus.items()}


@pytest.fixture
def p5():
    return red_poset_of(pyr5())


ACCEPTANCE_LINES: list[str] = []


def report(criterion, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
