import numpy as np
import pytest

from locc_ops.errors import InputError
from locc_ops.graph import (
    PatternKind, canonical_form, classify, compute_graph, is_cycle54, is_matching13,
    isolating_states, isomorphic, pair_blocks, relation_vector, split_is_safe, subgraph,
    verify_pattern,
)
from locc_ops.states import FamilyParams, family_eq2

from conftest import CATALOG, DOUBLE_CYCLE, MATCHING13, graph_from_pairs, realize


def test_eq11_graph(eq11):
    g = compute_graph(eq11)
    assert g.edges(0) == [(0, 3), (0, 4), (1, 2), (1, 4), (2, 3)]
    assert g.edges(1) == [(0, 1), (0, 2), (3, 4)]
    assert g.edges(2) == [(1, 3), (2, 4)]
    assert relation_vector(g).counts == (5, 3, 2)
    assert g.unique_party()


def test_eq10_and_eq11_share_a_graph(eq10, eq11):
    assert compute_graph(eq10) == compute_graph(eq11)


def test_compute_graph_rejects_non_orthogonal_sets(eq11):
    from locc_ops.states import ProductState
    from locc_ops.linalg import basis

    bad = eq11.replace(list(eq11.states[:4]) + [ProductState.of(basis(0, 3), basis(0, 3), basis(0, 3))],
                       eq11.labels)
    with pytest.raises(InputError):
        compute_graph(bad)


@pytest.mark.parametrize("name, counts", [
    ("(9,1)", (9, 1)), ("(8,2)", (8, 2)), ("(7,3)", (7, 3)),
    ("(6,4)", (6, 4)), ("(5,5)", (5, 5)),
    ("(5,5) two hubs", (5, 5)), ("(5,5) hub and bridge", (5, 5)),
])
def test_catalog_relation_vectors(name, counts):
    g = graph_from_pairs(5, 2, CATALOG[name])
    assert relation_vector(g).counts == counts


def test_relation_vector_canonical_is_sorted():
    g = graph_from_pairs(3, 2, {1: [(1, 2)], 2: [(1, 3), (2, 3)]})
    rv = relation_vector(g)
    assert rv.counts == (1, 2)
    assert rv.canonical == (2, 1)


def test_isolating_states_sorted_by_party_then_state():
    g = graph_from_pairs(5, 2, CATALOG["(9,1)"])
    # state 3 is orthogonal to everyone on party 1, as are 4 and 5
    assert isolating_states(g) == [(0, 2), (0, 3), (0, 4)]


def test_double_cycle_is_cycle54():
    g = graph_from_pairs(5, 2, DOUBLE_CYCLE)
    assert is_cycle54(g)
    assert not isolating_states(g)
    assert classify(g).pattern.kind == PatternKind.CYCLE54


def test_matching13_detected():
    g = graph_from_pairs(4, 3, MATCHING13)
    assert is_matching13(g)
    assert classify(g).pattern.kind == PatternKind.MATCHING13


def test_pair_block_needs_both_vertices_adjacent_to_the_rest():
    g = graph_from_pairs(5, 2, CATALOG["(6,4) pair block"])
    assert (0, (3, 4)) in pair_blocks(g)
    case = classify(g)
    assert case.pattern.kind == PatternKind.PAIR_BLOCK
    assert verify_pattern(g, case.pattern)
    assert not pair_blocks(graph_from_pairs(4, 3, MATCHING13))


def test_split_is_safe_on_eq11(eq11):
    g = compute_graph(eq11)
    # projecting party 1 onto state 4 leaves 2 and 5 together on a pair only party 1 separates
    assert not split_is_safe(g, 0, 3)


def test_subgraph_renumbers():
    g = graph_from_pairs(5, 2, DOUBLE_CYCLE)
    sub = subgraph(g, [3, 0, 4])
    assert sub.n == 3
    assert sub.label(0, 1) == frozenset({0})          # old (4, 1)
    assert sub.label(0, 2) == frozenset({1})          # old (4, 5)


def test_canonical_form_ignores_labelling(eq11):
    g = compute_graph(eq11)
    h = compute_graph(eq11.permuted([2, 4, 0, 1, 3], [1, 2, 0]))
    assert canonical_form(g) == canonical_form(h)
    assert isomorphic(g, h)
    assert not isomorphic(g, graph_from_pairs(5, 2, DOUBLE_CYCLE))


def test_canonical_form_limits():
    g = graph_from_pairs(6, 2, {1: [(1, 2)]})
    with pytest.raises(InputError):
        canonical_form(g)


def test_classify_range():
    with pytest.raises(InputError):
        classify(graph_from_pairs(6, 2, {1: [(1, 2)]}))


@pytest.mark.parametrize("seed", range(50))
def test_random_double_cycles_classify_as_cycle54(seed):
    states = realize(5, 2, DOUBLE_CYCLE, seed=seed)
    case = classify(compute_graph(states))
    assert case.pattern.kind == PatternKind.CYCLE54
    assert case.category.counts == (5, 5)


def random_family_params(rng):
    values = rng.uniform(0.5, 2.0, 10) * np.exp(2j * np.pi * rng.uniform(size=10))
    return FamilyParams(*values)


def test_random_family_parameters_classify_as_cycle54():
    rng = np.random.default_rng(2024)
    for _ in range(50):
        states = family_eq2(random_family_params(rng))
        case = classify(compute_graph(states))
        assert case.pattern.kind == PatternKind.CYCLE54
        assert case.category.counts == (5, 5)
