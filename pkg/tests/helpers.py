"""Shared constants and assertions for the test suite."""

from gallai.graph import Graph, verify_decomposition

# Hamiltonian path tables as printed for K2, K4, K6 and K8.
PRINTED_TABLES = {
    2: ((1, 2),),
    4: ((1, 2, 3, 4), (3, 1, 4, 2)),
    6: ((1, 2, 3, 4, 5, 6), (3, 1, 5, 2, 6, 4), (5, 3, 6, 1, 4, 2)),
    8: (
        (1, 2, 3, 4, 5, 6, 7, 8),
        (3, 1, 4, 2, 7, 5, 8, 6),
        (5, 2, 6, 1, 7, 3, 8, 4),
        (7, 4, 6, 3, 5, 1, 8, 2),
    ),
}

# Graph recovered from the pair contraction {4-7-6, 4-6-5-2-1-3, 2-4-3}.
PAIR_EXAMPLE_PATHS = ((4, 7, 6), (4, 6, 5, 2, 1, 3), (2, 4, 3))
# Graph recovered from the chord-extension cover {3-1-2-4, 1-4-5-2-3, 4-3-5}.
CHORD_EXAMPLE_PATHS = ((3, 1, 2, 4), (1, 4, 5, 2, 3), (4, 3, 5))
CHORD_EXAMPLE_TEXT = "5 9\n1 3\n1 2\n2 4\n1 4\n4 5\n2 5\n2 3\n3 4\n3 5\n"


def graph_from_paths(n, paths):
    edges = [(p[i], p[i + 1]) for p in paths for i in range(len(p) - 1)]
    return Graph.from_edges(n, edges)


def assert_valid(g, result, max_paths=None):
    assert result.ok, result.failure
    rep = verify_decomposition(g, result.decomposition)
    assert rep.valid, rep.offending_items
    if max_paths is not None:
        assert rep.path_count <= max_paths
    return rep
