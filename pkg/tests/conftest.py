import numpy as np
import pytest

from locc_ops.graph import OrthoGraph
from locc_ops.states import family_eq3, family_eq10, family_eq11, generate_from_graph


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def eq3():
    return family_eq3(1, 1, 1, 1)


@pytest.fixture
def eq10():
    return family_eq10()


@pytest.fixture
def eq11():
    return family_eq11()


def graph_from_pairs(n, m, edges):
    """1-based {party: [(j, k), ...]} to an OrthoGraph."""
    return OrthoGraph.from_edges(
        n, m, {p - 1: [(j - 1, k - 1) for j, k in pairs] for p, pairs in edges.items()})


def realize(n, m, edges, dims=None, seed=0):
    g = graph_from_pairs(n, m, edges)
    return generate_from_graph(g, dims or (5,) * m, seed=seed)


# Bipartite five-state catalog: party-2 pairs listed, every other pair on party 1.
def complement_on_party1(p2_pairs, n=5):
    p2 = {tuple(sorted(pair)) for pair in p2_pairs}
    p1 = [(j, k) for j in range(1, n + 1) for k in range(j + 1, n + 1) if (j, k) not in p2]
    return {1: p1, 2: sorted(p2)}


CATALOG = {
    "(9,1)": complement_on_party1([(1, 2)]),
    "(8,2)": complement_on_party1([(1, 2), (3, 4)]),
    "(7,3)": complement_on_party1([(1, 2), (1, 3), (2, 3)]),
    "(6,4)": complement_on_party1([(1, 2), (1, 3), (1, 4), (1, 5)]),
    "(5,5)": complement_on_party1([(1, 2), (1, 3), (1, 4), (1, 5), (2, 3)]),
    # state 4 orthogonal to 2, 3, 5 and state 5 to 1, 3, 4 on party 1
    "(5,5) two hubs": complement_on_party1([(1, 2), (1, 3), (1, 4), (2, 3), (2, 5)]),
    # state 5 orthogonal to 1, 2, 3 and state 4 to 2, 3 on party 1
    "(5,5) hub and bridge": complement_on_party1([(1, 2), (1, 3), (1, 4), (2, 3), (4, 5)]),
    "(6,4) pair block": {1: [(1, 4), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5)],
                         2: [(1, 2), (1, 3), (2, 3), (4, 5)]},
    "(7,3) pair block": {1: [(1, 4), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5), (1, 2)],
                         2: [(1, 3), (2, 3), (4, 5)]},
}

MATCHING13 = {1: [(1, 2), (3, 4)], 2: [(1, 3), (2, 4)], 3: [(1, 4), (2, 3)]}

DOUBLE_CYCLE = {1: [(1, 4), (1, 5), (2, 3), (2, 5), (3, 4)],
                2: [(1, 2), (1, 3), (2, 4), (3, 5), (4, 5)]}
