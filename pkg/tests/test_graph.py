import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gallai.generators import complete_graph, cycle_graph, path_graph, random_connected_graph, star_graph
from gallai.graph import (
    Decomposition,
    DisconnectedGraphError,
    Graph,
    GraphError,
    GraphParseError,
    Path,
    degree_lower_bound,
    gallai_bound,
    parse_decomposition,
    parse_graph,
    serialize_decomposition,
    serialize_graph,
    verify_decomposition,
    merge_at_shared_ends,
)
from helpers import CHORD_EXAMPLE_PATHS, CHORD_EXAMPLE_TEXT


@st.composite
def connected_graphs(draw, max_n=9):
    n = draw(st.integers(2, max_n))
    e = draw(st.integers(n - 1, n * (n - 1) // 2))
    return random_connected_graph(n, e, seed=draw(st.integers(0, 10**6)))


def test_parse_triangle():
    g = parse_graph("3 3\n1 2\n2 3\n1 3")
    assert g == complete_graph(3)


def test_parse_chord_example_text():
    g = parse_graph(CHORD_EXAMPLE_TEXT)
    assert g.n == 5 and g.e == 9
    assert g.edges == frozenset(complete_graph(5).edges - {(1, 5)})


def test_parse_skips_comments_and_blank_lines():
    g = parse_graph("# a comment\n\n2 1\n# between\n2 1\n")
    assert g.edges == {(1, 2)}


@pytest.mark.parametrize(
    "text, lineno, fragment",
    [
        ("2 2\n1 2\n1 2", 3, "duplicate"),
        ("3\n1 2", 1, "header"),
        ("x y\n", 1, "header"),
        ("3 1\n1 4", 2, "range"),
        ("3 1\n0 2", 2, "range"),
        ("3 1\n2 2", 2, "self-loop"),
        ("3 2\n1 2", 2, "promises 2 edges, found 1"),
        ("3 1\n1 2\n2 3", 3, "promises 1 edges, found 2"),
        ("3 1\n1 2 3", 2, "expected 2 integers"),
    ],
)
def test_parse_errors_name_the_line(text, lineno, fragment):
    with pytest.raises(GraphParseError) as info:
        parse_graph(text)
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)
    assert fragment in str(info.value)


def test_parse_error_kinds_are_distinct():
    msgs = set()
    for text in ("2 2\n1 2\n1 2", "x\n", "3 1\n1 4", "3 1\n2 2"):
        with pytest.raises(GraphParseError) as info:
            parse_graph(text)
        msgs.add(str(info.value).split(": ", 1)[1].split()[0])
    assert len(msgs) == 4


@settings(max_examples=60)
@given(connected_graphs())
def test_serialize_round_trip(g):
    text = serialize_graph(g)
    assert parse_graph(text) == g
    assert serialize_graph(parse_graph(text)) == text


def test_serialize_is_canonical():
    assert serialize_graph(parse_graph("3 2\n3 2\n2 1\n")) == "3 2\n1 2\n2 3\n"


@pytest.mark.parametrize("n, bound", [(1, 1), (2, 1), (5, 3), (6, 3), (7, 4)])
def test_gallai_bound(n, bound):
    assert gallai_bound(n) == bound


def test_gallai_bound_even_order():
    for half in range(1, 20):
        assert gallai_bound(2 * half) == half


def test_gallai_bound_rejects_zero():
    with pytest.raises(GraphError):
        gallai_bound(0)


def test_degree_lower_bound_examples():
    assert degree_lower_bound(star_graph(3)) == 2
    assert degree_lower_bound(star_graph(4)) == 2
    assert degree_lower_bound(path_graph(6)) == 1


@settings(max_examples=60)
@given(connected_graphs())
def test_degree_bound_never_exceeds_gallai(g):
    assert degree_lower_bound(g) <= gallai_bound(g.n)


def test_path_equality_ignores_direction():
    assert Path([1, 2, 3]) == Path([3, 2, 1])
    assert hash(Path([1, 2, 3])) == hash(Path([3, 2, 1]))
    assert Path([1, 2, 3]) != Path([2, 1, 3])
    assert len(Path([4, 5, 6, 7])) == 3


def test_decomposition_equality_ignores_order_and_direction():
    a = Decomposition([(1, 2, 3), (3, 1)])
    b = Decomposition([(1, 3), (3, 2, 1)])
    assert a == b and hash(a) == hash(b)


def test_verify_chord_example_cover():
    g = parse_graph(CHORD_EXAMPLE_TEXT)
    rep = verify_decomposition(g, Decomposition(CHORD_EXAMPLE_PATHS))
    assert rep.valid and rep.path_count == 3 and rep.bound == 3 and rep.within_bound


def test_verify_triangle():
    k3 = complete_graph(3)
    assert verify_decomposition(k3, Decomposition([(1, 2, 3), (3, 1)])).valid
    rep = verify_decomposition(k3, Decomposition([(1, 2, 3), (1, 2)]))
    assert not rep.valid
    assert not rep.edge_disjoint and not rep.covers_all_edges
    text = " ".join(rep.offending_items)
    assert "1-2" in text and "1-3" in text


def test_verify_flags_repeated_vertex_and_non_edge():
    k3 = complete_graph(3)
    rep = verify_decomposition(k3, Decomposition([(1, 2, 3, 1)]))
    assert not rep.paths_simple and not rep.valid
    rep = verify_decomposition(path_graph(3), Decomposition([(1, 2), (2, 3), (1, 3)]))
    assert not rep.paths_simple


def test_verify_valid_iff_three_checks():
    k4 = complete_graph(4)
    for paths in ([(1, 2, 3, 4), (2, 4, 1, 3)], [(1, 2, 3, 4)], [(1, 2), (1, 2), (3, 4)]):
        rep = verify_decomposition(k4, Decomposition(paths))
        assert rep.valid == (rep.covers_all_edges and rep.edge_disjoint and rep.paths_simple)


def test_empty_decomposition_of_single_vertex():
    assert verify_decomposition(Graph(1, frozenset()), Decomposition([])).valid


def test_disconnected_error_names_components():
    g = Graph.from_edges(5, [(1, 2), (3, 4)])
    with pytest.raises(DisconnectedGraphError) as info:
        g.require_connected()
    assert "{1, 2}" in str(info.value) and "{3, 4}" in str(info.value) and "{5}" in str(info.value)


def test_graph_rejects_bad_edges():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 4)])


def test_merge_at_shared_ends_c4_gives_two_paths(c4):
    d = merge_at_shared_ends(c4, Decomposition([(1, 2), (3, 4), (3, 1), (4, 2)]))
    assert len(d) == 2
    assert verify_decomposition(c4, d).valid


def test_merge_at_shared_ends_single_path_unchanged():
    g = path_graph(5)
    d = Decomposition([(1, 2, 3, 4, 5)])
    assert merge_at_shared_ends(g, d) == d


def test_merge_at_shared_ends_printed_k5_subpaths():
    # Concatenation at shared ends cannot cut 3-1-5-2 apart, so it stops at four;
    # the three-path cover needs the cut-and-rejoin step of the table method.
    k5 = complete_graph(5)
    d = Decomposition([(1, 2, 3, 4, 5), (3, 1, 5, 2), (5, 3), (1, 4, 2)])
    merged = merge_at_shared_ends(k5, d)
    assert verify_decomposition(k5, merged).valid
    assert len(merged) == 4
    assert verify_decomposition(k5, Decomposition([(1, 2, 3, 4, 5), (3, 1, 4, 2, 5), (1, 5, 3)])).valid


@settings(max_examples=80)
@given(connected_graphs(), st.integers(0, 10**6))
def test_merge_at_shared_ends_reaches_fixpoint(g, seed):
    import random

    # split a valid cover into single edges, shuffled, and merge
    edges = sorted(g.edges)
    random.Random(seed).shuffle(edges)
    d = Decomposition(edges)
    merged = merge_at_shared_ends(g, d)
    assert verify_decomposition(g, merged).valid
    assert len(merged) <= len(d)
    for i, p in enumerate(merged.paths):
        for q in merged.paths[i + 1 :]:
            shared = set(p.ends) & set(q.ends)
            for v in shared:
                a = p.vertices if p.vertices[-1] == v else p.vertices[::-1]
                b = q.vertices if q.vertices[0] == v else q.vertices[::-1]
                assert len(set(a) | set(b)) < len(a) + len(b) - 1


def test_decomposition_text_round_trip():
    d = Decomposition([(3, 1, 2, 4), (4, 3, 5)])
    text = serialize_decomposition(d)
    assert text == "3 1 2 4\n4 3 5\n"
    assert parse_decomposition(text) == d


def test_cycle_graph_shape():
    g = cycle_graph(5)
    assert g.e == 5 and all(g.degree(v) == 2 for v in g.vertices())
