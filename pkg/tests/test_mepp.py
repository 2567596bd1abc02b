from fractions import Fraction
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gallai.generators import all_labeled_trees, complete_graph, path_graph, random_connected_graph, random_tree, star_graph
from gallai.graph import Decomposition, Graph, Path, gallai_bound
from gallai.mepp import (
    MeppNotFound,
    NotAPathError,
    _tree_path_peripheral,
    certify,
    average_length_stats,
    decompose_graph_mepp,
    decompose_mepp,
    decompose_tree_mepp,
    find_mepp,
    is_maximally_extended,
    is_peripheral,
    maximal_candidates,
)
from helpers import assert_valid

# a-b-c-d-e with f hanging on b and g on d, labelled a..g = 1..7
CATERPILLAR = Graph.from_edges(7, [(1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (4, 7)])


def nx_peripheral(g, vertices):
    """Reference: delete the path's edges, drop isolated vertices, test connectivity."""
    h = nx.Graph(list(g.edges))
    h.remove_edges_from(zip(vertices, vertices[1:]))
    h.remove_nodes_from([v for v in list(h.nodes) if h.degree(v) == 0])
    return h.number_of_nodes() == 0 or nx.is_connected(h)


def random_simple_path(g, rng):
    start = rng.choice(g.non_isolated())
    path = [start]
    while True:
        options = sorted(w for w in g.neighbors(path[-1]) if w not in path)
        if not options or (len(path) > 1 and rng.random() < 0.3):
            return path
        path.append(rng.choice(options))


def test_star_centre_path_is_mepp():
    k13 = star_graph(3)
    assert is_maximally_extended(k13, [2, 1, 3])
    assert is_peripheral(k13, [2, 1, 3])


def test_triangle_edge_not_maximally_extended():
    assert not is_maximally_extended(complete_graph(3), [1, 2])


def test_caterpillar_spine_is_not_peripheral():
    assert not is_peripheral(CATERPILLAR, [1, 2, 3, 4, 5])
    assert certify(CATERPILLAR, [1, 2, 3, 4, 5]).remainder_components == 2


def test_caterpillar_hanging_path_is_peripheral():
    assert is_peripheral(CATERPILLAR, [6, 2, 1])


def test_find_mepp_caterpillar():
    assert find_mepp(CATERPILLAR) == Path([1, 2, 6])


def test_find_mepp_examples():
    assert find_mepp(path_graph(5)) == Path([1, 2, 3, 4, 5])
    p = find_mepp(star_graph(3))
    assert len(p) == 2 and 1 in p.vertices[1:-1]


def test_find_mepp_no_edges():
    with pytest.raises(MeppNotFound):
        find_mepp(Graph(3, frozenset()))


def test_not_a_path_errors():
    with pytest.raises(NotAPathError):
        is_peripheral(path_graph(4), [1, 3])
    with pytest.raises(NotAPathError):
        is_maximally_extended(complete_graph(3), [1, 2, 3, 1])


@pytest.mark.parametrize("n", range(2, 8))
def test_leaf_to_leaf_paths_are_maximally_extended(n):
    for t in all_labeled_trees(n):
        leaves = [v for v in t.vertices() if t.degree(v) == 1]
        h = nx.Graph(list(t.edges))
        for a in leaves:
            for b in leaves:
                if a < b:
                    assert is_maximally_extended(t, nx.shortest_path(h, a, b))


@settings(max_examples=150)
@given(st.integers(2, 10), st.integers(0, 10**6))
def test_peripheral_matches_networkx(n, seed):
    rng = random.Random(seed)
    e = rng.randint(n - 1, n * (n - 1) // 2)
    g = random_connected_graph(n, e, seed=seed)
    for _ in range(5):
        p = random_simple_path(g, rng)
        if len(p) > 1:
            assert is_peripheral(g, p) == nx_peripheral(g, p)


@pytest.mark.parametrize("n", range(2, 8))
def test_fast_tree_rule_matches_networkx(n):
    for t in all_labeled_trees(n):
        h = nx.Graph(list(t.edges))
        leaves = [v for v in t.vertices() if t.degree(v) == 1]
        for a in leaves:
            for b in leaves:
                if a < b:
                    p = tuple(nx.shortest_path(h, a, b))
                    assert _tree_path_peripheral(t, p) == nx_peripheral(t, p)


@pytest.mark.parametrize("n", range(2, 8))
def test_find_mepp_on_every_tree(n):
    for t in all_labeled_trees(n):
        c = certify(t, find_mepp(t))
        assert c.maximally_extended and c.peripheral


def test_tree_peel_examples():
    assert len(decompose_tree_mepp(path_graph(5)).decomposition) == 1
    assert len(decompose_tree_mepp(star_graph(3)).decomposition) == 2


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 200), st.integers(0, 10**6))
def test_tree_peel_random_trees_within_bound(n, seed):
    t = random_tree(n, seed=seed)
    res = decompose_tree_mepp(t)
    assert_valid(t, res, gallai_bound(n))
    assert all(step["drop"] >= 2 for step in res.stats["peels"])


def test_graph_peel_triangle():
    res = decompose_graph_mepp(complete_graph(3))
    assert res.decomposition == Decomposition([(1, 2, 3), (1, 3)])


def test_graph_peel_examples(chord_example):
    assert_valid(chord_example, decompose_mepp(chord_example), 3)
    assert len(decompose_mepp(complete_graph(4)).decomposition) == 2


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 12), st.integers(0, 10**6))
def test_graph_peel_always_valid(n, seed):
    rng = random.Random(seed)
    g = random_connected_graph(n, rng.randint(n - 1, n * (n - 1) // 2), seed=seed)
    res = decompose_graph_mepp(g)
    assert_valid(g, res)
    peels = res.stats["peels"]
    assert len(peels) == len(res.decomposition)
    assert res.stats["fallbacks"] == sum(not p["peripheral"] for p in peels)


def test_maximal_candidates_are_maximal():
    g = random_connected_graph(9, 20, seed=2)
    for c in maximal_candidates(g):
        assert is_maximally_extended(g, c)


def test_decompose_mepp_dispatch():
    t = random_tree(12, seed=1)
    assert decompose_mepp(t).decomposition == decompose_tree_mepp(t).decomposition


def test_average_length_stats_path():
    st_ = average_length_stats(path_graph(5), decompose_tree_mepp(path_graph(5)))
    assert st_.avg_length == 4 and st_.threshold == 1 and st_.holds


def test_average_length_stats_k4():
    st_ = average_length_stats(complete_graph(4), decompose_mepp(complete_graph(4)))
    assert st_.avg_length == 3 and st_.threshold == 3 and st_.holds


def test_average_length_stats_star_recorded_verbatim():
    st_ = average_length_stats(star_graph(3), decompose_tree_mepp(star_graph(3)))
    assert st_.avg_length == Fraction(3, 2) and st_.threshold == 2 and not st_.holds


def test_average_length_stats_need_paths():
    with pytest.raises(ValueError):
        average_length_stats(path_graph(3), [])
