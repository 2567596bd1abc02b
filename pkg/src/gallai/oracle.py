"""Exact minimum path decompositions by branch and bound.

The search covers the lowest uncovered edge with every simple path through
it that uses only uncovered edges, longest extensions first, and prunes with
``max(ceil(odd / 2), ceil(max_degree / 2), 1)`` over the uncovered edges.

The hot loop runs in the compiled ``_oracle_kernel`` extension when it is
importable and in ``_oracle_py`` otherwise. Set ``GALLAI_PURE_PYTHON=1`` to
force the fallback.
"""

from __future__ import annotations

import os
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from . import _oracle_py
from .graph import (
    DecompResult,
    Decomposition,
    Edge,
    Graph,
    degree_lower_bound,
    gallai_bound,
    odd_degree_count,
    verify_decomposition,
)

if os.environ.get("GALLAI_PURE_PYTHON") == "1":
    _solve = _oracle_py.solve
    KERNEL = "python"
else:
    try:
        from ._oracle_kernel import solve as _solve

        KERNEL = "cython"
    except ImportError:
        _solve = _oracle_py.solve
        KERNEL = "python"

DEFAULT_MAX_EDGES = 15
KERNEL_MAX_EDGES = 64


class EdgeLimitExceeded(ValueError):
    def __init__(self, e: int, limit: int) -> None:
        super().__init__(f"graph has {e} edges, oracle limit is {limit}")
        self.e = e
        self.limit = limit


def default_limit() -> int:
    raw = os.environ.get("GALLAI_MAX_ORACLE_EDGES")
    return int(raw) if raw else DEFAULT_MAX_EDGES


@dataclass(frozen=True)
class OracleResult:
    minimum: int
    witness: Decomposition
    nodes_explored: int


@dataclass(frozen=True)
class GallaiCheck:
    minimum: int
    bound: int
    holds: bool


def exact_cover(
    edges: Iterable[Edge], solver: Optional[Callable] = None
) -> tuple[list[tuple[int, ...]], int]:
    """Minimum path cover of an arbitrary edge set.

    Returns ``(paths, nodes_explored)`` with paths in the input labels.
    """
    es = sorted(set(edges))
    if not es:
        return [], 0
    if len(es) > KERNEL_MAX_EDGES:
        raise EdgeLimitExceeded(len(es), KERNEL_MAX_EDGES)
    labels = sorted({v for e in es for v in e})
    index = {v: i for i, v in enumerate(labels)}
    local = [(index[a], index[b]) for a, b in es]
    best, witness, nodes, _ = (solver or _solve)(len(labels), local, len(es) + 1)
    return [tuple(labels[v] for v in p) for p in witness], nodes


def min_path_decomposition(g: Graph, limit: Optional[int] = None) -> OracleResult:
    g.require_connected()
    limit = default_limit() if limit is None else limit
    if limit > KERNEL_MAX_EDGES:
        raise ValueError(f"oracle limit cannot exceed {KERNEL_MAX_EDGES} edges")
    if g.e > limit:
        raise EdgeLimitExceeded(g.e, limit)
    if limit > DEFAULT_MAX_EDGES and g.e > DEFAULT_MAX_EDGES:
        warnings.warn(
            f"exact search on {g.e} edges may take exponentially long", RuntimeWarning, stacklevel=2
        )
    paths, nodes = exact_cover(g.edges)
    return OracleResult(len(paths), Decomposition(paths), nodes)


def check_gallai(g: Graph, limit: Optional[int] = None) -> GallaiCheck:
    res = min_path_decomposition(g, limit)
    bound = gallai_bound(g.n)
    return GallaiCheck(res.minimum, bound, res.minimum <= bound)


def lower_bounds(g: Graph) -> dict[str, int]:
    return {
        "degree": degree_lower_bound(g),
        "odd": (odd_degree_count(g) + 1) // 2,
    }


def compare_methods(
    g: Graph, seed: int | str = 0, limit: Optional[int] = None
) -> dict[str, dict]:
    """Run every decomposer plus the oracle and re-verify every output."""
    from .methods import METHODS, run_method

    records: dict[str, dict] = {}
    minimum = None
    limit = default_limit() if limit is None else limit
    if g.e <= limit:
        minimum = min_path_decomposition(g, limit).minimum
    for name in METHODS:
        res = run_method(name, g, seed=seed)
        rec: dict = {"path_count": res.path_count, "valid": False, "within_bound": False}
        if res.ok:
            rep = verify_decomposition(g, res.decomposition)
            rec.update(valid=rep.valid, within_bound=rep.within_bound)
            if minimum is not None:
                rec["gap_to_minimum"] = rep.path_count - minimum
        else:
            rec["failure"] = res.failure.to_json()
        records[name] = rec
    if minimum is not None:
        records["oracle"] = {
            "path_count": minimum,
            "valid": True,
            "within_bound": minimum <= gallai_bound(g.n),
            "gap_to_minimum": 0,
        }
    return records


def oracle_result(g: Graph, limit: Optional[int] = None) -> DecompResult:
    res = min_path_decomposition(g, limit)
    return DecompResult("oracle", res.witness, stats={"nodes_explored": res.nodes_explored})


def exact_paths(edges: Sequence[Edge]) -> list[tuple[int, ...]]:
    return exact_cover(edges)[0]
