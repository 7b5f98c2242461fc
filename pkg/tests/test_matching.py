import numpy as np
import pytest

from conftest import graph_from_matrix
from packgraph.fixtures import get_fixture
from packgraph.graph import generate_instance, matching_weight
from packgraph.matching import (
    brute_force_matching,
    max_weight_matching_of_size,
    max_weight_perfect_matching,
)


def test_perfect_matching_fixture_values():
    assert matching_weight(
        get_fixture("fig3").graph, max_weight_perfect_matching(get_fixture("fig3").graph)
    ) == 6
    g = get_fixture("fig5").graph
    m = max_weight_perfect_matching(g)
    assert matching_weight(g, m) == 12
    assert m.covered() == set(range(8))


def test_perfect_matching_needs_even_n():
    g = generate_instance(5, "general", seed=0)
    with pytest.raises(ValueError):
        max_weight_perfect_matching(g)


def test_size_matching_fig2():
    g = get_fixture("fig2").graph
    m = max_weight_matching_of_size(g, 10)
    assert m.size == 10
    assert matching_weight(g, m) == 20


def test_size_matching_edges():
    g = generate_instance(9, "general", seed=11)
    assert max_weight_matching_of_size(g, 0).size == 0
    m1 = max_weight_matching_of_size(g, 1)
    assert matching_weight(g, m1) == int(g.w.max())
    with pytest.raises(ValueError):
        max_weight_matching_of_size(g, 5)
    with pytest.raises(ValueError):
        max_weight_matching_of_size(g, -1)


def test_brute_force_single_edge():
    g = graph_from_matrix(
        [[0, 1, 7, 2], [1, 0, 3, 4], [7, 3, 0, 5], [2, 4, 5, 0]]
    )
    m = brute_force_matching(g, 1)
    assert m.edges == ((0, 2),)


def test_engine_matches_brute_force_small():
    for seed in range(12):
        n = 4 + 2 * (seed % 4)
        g = generate_instance(n, "general", seed=seed)
        for p in range(n // 2 + 1):
            a = matching_weight(g, max_weight_matching_of_size(g, p))
            b = matching_weight(g, brute_force_matching(g, p))
            assert a == b, (seed, n, p)


def test_matching_is_disjoint():
    g = generate_instance(10, "general", seed=99)
    m = max_weight_matching_of_size(g, 3)
    flat = [v for e in m.edges for v in e]
    assert len(flat) == len(set(flat)) == 6
