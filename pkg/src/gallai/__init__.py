"""Edge-disjoint path decompositions of connected graphs, checked against ``ceil(n / 2)``."""

from .graph import (
    DecompResult,
    Decomposition,
    Failure,
    Graph,
    GraphError,
    GraphParseError,
    Path,
    VerifyReport,
    degree_lower_bound,
    gallai_bound,
    parse_decomposition,
    parse_graph,
    serialize_decomposition,
    serialize_graph,
    verify_decomposition,
    merge_at_shared_ends,
)
from .methods import METHODS, run_method

__version__ = "0.1.0"
FORMAT_VERSION = "1"

__all__ = [
    "DecompResult",
    "Decomposition",
    "Failure",
    "FORMAT_VERSION",
    "Graph",
    "GraphError",
    "GraphParseError",
    "METHODS",
    "Path",
    "VerifyReport",
    "degree_lower_bound",
    "gallai_bound",
    "parse_decomposition",
    "parse_graph",
    "run_method",
    "serialize_decomposition",
    "serialize_graph",
    "verify_decomposition",
    "merge_at_shared_ends",
]
