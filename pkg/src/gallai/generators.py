"""Graph corpora: complete graphs, random trees and graphs, exhaustive enumeration."""

from __future__ import annotations

import heapq
import itertools
import random
from typing import Iterator, Sequence

from .graph import Graph, GraphError, edge

MAX_TREE_ENUMERATION = 8
MAX_GRAPH_ENUMERATION = 6


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"complete_graph needs n >= 1, got {n}")
    return Graph(n, frozenset(itertools.combinations(range(1, n + 1), 2)))


def path_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path_graph needs n >= 1, got {n}")
    return Graph(n, frozenset((i, i + 1) for i in range(1, n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle_graph needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def star_graph(leaves: int) -> Graph:
    """``K_{1,leaves}`` with centre 1."""
    return Graph(leaves + 1, frozenset((1, v) for v in range(2, leaves + 2)))


def prufer_to_tree(seq: Sequence[int], n: int) -> Graph:
    """Decode a Prüfer sequence of length ``n - 2`` over labels ``1..n``."""
    if n < 1 or len(seq) != max(n - 2, 0):
        raise GraphError(f"Prüfer sequence of length {len(seq)} does not fit n={n}")
    if n == 1:
        return Graph(1, frozenset())
    degree = [1] * (n + 1)
    for x in seq:
        if not 1 <= x <= n:
            raise GraphError(f"Prüfer entry {x} outside 1..{n}")
        degree[x] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append(edge(leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append(edge(u, v))
    return Graph(n, frozenset(edges))


def random_tree(n: int, seed: int | str | None = None) -> Graph:
    """Uniform labelled tree via a uniform Prüfer sequence."""
    if n < 1:
        raise GraphError(f"random_tree needs n >= 1, got {n}")
    rng = random.Random(seed)
    return prufer_to_tree([rng.randint(1, n) for _ in range(n - 2)], n)


def random_connected_graph(n: int, e: int, seed: int | str | None = None) -> Graph:
    """Random spanning tree plus ``e - n + 1`` distinct extra edges."""
    if n < 1:
        raise GraphError(f"random_connected_graph needs n >= 1, got {n}")
    if not (n - 1 <= e <= n * (n - 1) // 2):
        raise GraphError(f"edge count {e} outside [{n - 1}, {n * (n - 1) // 2}] for n={n}")
    rng = random.Random(seed)
    tree = prufer_to_tree([rng.randint(1, n) for _ in range(n - 2)], n) if n > 1 else Graph(1, frozenset())
    rest = sorted(set(itertools.combinations(range(1, n + 1), 2)) - tree.edges)
    extra = rng.sample(rest, e - (n - 1))
    return Graph(n, tree.edges | frozenset(extra))


def all_labeled_trees(n: int) -> Iterator[Graph]:
    """All ``n ** (n - 2)`` labelled trees, in Prüfer-sequence order."""
    if not 1 <= n <= MAX_TREE_ENUMERATION:
        raise GraphError(f"tree enumeration supports 1 <= n <= {MAX_TREE_ENUMERATION}, got {n}")
    for seq in itertools.product(range(1, n + 1), repeat=max(n - 2, 0)):
        yield prufer_to_tree(seq, n)


def all_connected_graphs(n: int) -> Iterator[Graph]:
    """All labelled connected graphs on ``1..n``, by filtering edge subsets."""
    if not 1 <= n <= MAX_GRAPH_ENUMERATION:
        raise GraphError(
            f"graph enumeration supports 1 <= n <= {MAX_GRAPH_ENUMERATION}, got {n}"
        )
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    full = (1 << n) - 1
    for mask in range(1 << len(pairs)):
        chosen = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if len(chosen) < n - 1:
            continue
        # grow the set reachable from vertex 1 as a bitmask
        reach = 1
        grew = True
        while grew:
            grew = False
            for u, v in chosen:
                bu, bv = 1 << (u - 1), 1 << (v - 1)
                if (reach & bu) and not (reach & bv):
                    reach |= bv
                    grew = True
                elif (reach & bv) and not (reach & bu):
                    reach |= bu
                    grew = True
        if reach == full:
            yield Graph(n, frozenset(chosen))


def random_graph_corpus(
    count: int = 200, max_n: int = 12, seed: int | str = 0, min_n: int = 2
) -> list[Graph]:
    """``count`` seeded random connected graphs with ``min_n <= n <= max_n``.

    Graph ``i`` draws its order and edge count from the stream ``"<seed>:<i>"``
    so any single graph can be regenerated without the others.
    """
    out = []
    for i in range(count):
        rng = random.Random(f"{seed}:{i}")
        n = rng.randint(min_n, max_n)
        e = rng.randint(n - 1, n * (n - 1) // 2)
        out.append(random_connected_graph(n, e, seed=f"{seed}:{i}:graph"))
    return out
