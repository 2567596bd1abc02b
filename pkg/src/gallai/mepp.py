"""Maximally extended peripheral paths and the peel decomposers built on them.

A path is *maximally extended* when neither end vertex has a neighbour off
the path, and *peripheral* when deleting its edges leaves the non-isolated
remainder connected. Peeling such paths one at a time covers a tree with at
most ``ceil(n / 2)`` paths; on general graphs the same peel is run greedily and
records every step where no peripheral candidate existed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import (
    DecompResult,
    Decomposition,
    Edge,
    Failure,
    Graph,
    GraphError,
    Path,
    gallai_bound,
)


class NotAPathError(GraphError):
    pass


class MeppNotFound(LookupError):
    pass


@dataclass(frozen=True)
class MeppCertificate:
    path: Path
    maximally_extended: bool
    peripheral: bool
    remainder_components: int


@dataclass(frozen=True)
class ConjectureStats:
    avg_length: Fraction
    threshold: int
    holds: bool


def _check_path(g: Graph, p: Path | Sequence[int]) -> Path:
    p = p if isinstance(p, Path) else Path(p)
    if len(p.vertices) < 2 or not p.is_simple():
        raise NotAPathError(f"{p} is not a simple path with at least one edge")
    for u, v in p.edges():
        if not g.has_edge(u, v):
            raise NotAPathError(f"{p} uses {u}-{v}, which is not an edge of the graph")
    return p


def is_maximally_extended(g: Graph, p: Path | Sequence[int]) -> bool:
    p = _check_path(g, p)
    on_path = set(p.vertices)
    a, b = p.ends
    return g.neighbors(a) <= on_path and g.neighbors(b) <= on_path


def remainder_components(g: Graph, p: Path | Sequence[int]) -> int:
    """Components with at least one edge left after deleting ``p``'s edges."""
    p = _check_path(g, p)
    return len(g.without(p.edges()).edge_components())


def is_peripheral(g: Graph, p: Path | Sequence[int]) -> bool:
    return remainder_components(g, p) <= 1


def certify(g: Graph, p: Path | Sequence[int]) -> MeppCertificate:
    p = _check_path(g, p)
    comps = remainder_components(g, p)
    return MeppCertificate(p, is_maximally_extended(g, p), comps <= 1, comps)


def _is_forest_tree(g: Graph) -> bool:
    """True when the non-isolated part of ``g`` is a single tree."""
    live = g.non_isolated()
    if len(live) != g.e + 1:
        return False
    seen = {live[0]}
    queue = deque(seen)
    while queue:
        for w in g.neighbors(queue.popleft()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(live)


def _tree_candidates(g: Graph) -> list[tuple[int, ...]]:
    """All leaf-to-leaf paths, smaller leaf first, sorted."""
    leaves = [v for v in g.vertices() if g.degree(v) == 1]
    out = []
    for i, a in enumerate(leaves[:-1]):
        parent = {a: 0}
        queue = deque([a])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w not in parent:
                    parent[w] = u
                    queue.append(w)
        for b in leaves[i + 1 :]:
            walk = [b]
            while walk[-1] != a:
                walk.append(parent[walk[-1]])
            out.append(tuple(reversed(walk)))
    out.sort()
    return out


def _tree_path_peripheral(g: Graph, vertices: tuple[int, ...]) -> bool:
    # Off-path edges hang from interior vertices; each such vertex anchors its
    # own component, so the remainder is connected iff at most one exists.
    branching = 0
    for v in vertices[1:-1]:
        if g.degree(v) > 2:
            branching += 1
            if branching > 1:
                return False
    return True


def _greedy_extend(g: Graph, start: int, first: int) -> tuple[int, ...]:
    path = [start, first]
    on_path = {start, first}
    for _ in range(2):
        while True:
            nxt = [w for w in g.neighbors(path[-1]) if w not in on_path]
            if not nxt:
                break
            w = min(nxt)
            path.append(w)
            on_path.add(w)
        path.reverse()
    return Path(path).canonical()


def maximal_candidates(g: Graph) -> list[tuple[int, ...]]:
    """Greedy maximal extensions from every vertex and first edge, sorted."""
    found = set()
    for s in g.vertices():
        for t in sorted(g.neighbors(s)):
            found.add(_greedy_extend(g, s, t))
    return sorted(found)


def find_mepp(g: Graph) -> Path:
    """Lexicographically least maximally extended peripheral path of ``g``.

    Leaf-to-leaf paths are searched when the edges of ``g`` form a tree,
    greedy maximal paths otherwise. Raises :class:`MeppNotFound` when no
    candidate qualifies.
    """
    if g.e == 0:
        raise MeppNotFound("graph has no edges")
    if _is_forest_tree(g):
        for cand in _tree_candidates(g):
            if _tree_path_peripheral(g, cand):
                return Path(cand)
        raise MeppNotFound("no leaf-to-leaf path is peripheral")
    for cand in maximal_candidates(g):
        if is_peripheral(g, cand):
            return Path(cand)
    raise MeppNotFound("no greedy maximal path is peripheral")


def decompose_tree_mepp(g: Graph) -> DecompResult:
    if not g.is_tree():
        raise GraphError("decompose_tree_mepp needs a tree")
    rest = g
    paths: list[Path] = []
    peels = []
    while rest.e:
        before = len(rest.non_isolated())
        try:
            p = find_mepp(rest)
        except MeppNotFound as exc:
            return DecompResult(
                "mepp",
                failure=Failure("find_mepp", {"reason": str(exc), "remaining_edges": sorted(map(list, rest.edges))}),
                stats={"peels": peels},
            )
        rest = rest.without(p.edges())
        paths.append(p)
        peels.append({"path": list(p.vertices), "drop": before - len(rest.non_isolated())})
    return DecompResult("mepp", Decomposition(paths), stats={"peels": peels})


def decompose_graph_mepp(g: Graph) -> DecompResult:
    """Greedy peel on any connected graph; never fails.

    When a component has no peripheral candidate, its least maximal path is
    peeled anyway and the pieces left behind are handled separately.
    """
    g.require_connected()
    paths: list[Path] = []
    peels = []
    pending: list[frozenset[Edge]] = [g.edges] if g.e else []
    while pending:
        pending.sort(key=min)
        part = Graph(g.n, pending.pop(0))
        try:
            p = find_mepp(part)
            fallback = False
        except MeppNotFound:
            p = Path(maximal_candidates(part)[0])
            fallback = True
        paths.append(p)
        peels.append({"path": list(p.vertices), "peripheral": not fallback})
        pending.extend(part.without(p.edges()).edge_components())
    fallbacks = sum(1 for x in peels if not x["peripheral"])
    return DecompResult(
        "mepp", Decomposition(paths), stats={"peels": peels, "fallbacks": fallbacks}
    )


def decompose_mepp(g: Graph) -> DecompResult:
    """Tree peel for trees, greedy graph peel otherwise."""
    if g.is_tree():
        return decompose_tree_mepp(g)
    return decompose_graph_mepp(g)


def average_length_stats(g: Graph, peel: DecompResult | Decomposition | Iterable[Path]) -> ConjectureStats:
    """Average peeled-path length against ``(e + 1) // ceil(n / 2)``."""
    if isinstance(peel, DecompResult):
        if not peel.ok:
            raise ValueError("conjecture statistics need a successful decomposition")
        peel = peel.decomposition
    count = len(list(peel))
    if count == 0:
        raise ValueError("conjecture statistics need at least one path")
    avg = Fraction(g.e, count)
    threshold = (g.e + 1) // gallai_bound(g.n)
    return ConjectureStats(avg, threshold, avg >= threshold)
