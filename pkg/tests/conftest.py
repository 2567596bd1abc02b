import pytest

from helpers import PRINTED_TABLES, PAIR_EXAMPLE_PATHS, CHORD_EXAMPLE_PATHS, graph_from_paths
from gallai.graph import Graph


@pytest.fixture
def printed_tables():
    return PRINTED_TABLES


@pytest.fixture
def pair_example():
    return graph_from_paths(7, PAIR_EXAMPLE_PATHS)


@pytest.fixture
def chord_example():
    return graph_from_paths(5, CHORD_EXAMPLE_PATHS)


@pytest.fixture
def c4():
    return Graph.from_edges(4, [(1, 2), (2, 4), (3, 4), (1, 3)])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[n])
