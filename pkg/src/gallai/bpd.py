"""Spanning-tree route: basic path decomposition, chord extension, weighted selection.

A spanning tree's edges are split into ``ceil(n / 2)`` paths of length one or
two. Each basic path grows into a tree by absorbing chords, every edge is
weighted by how many of those trees hold it, and one path is then picked per
tree so that each edge ends up used exactly once.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph import (
    DecompResult,
    Decomposition,
    Edge,
    Failure,
    Graph,
    GraphError,
    Path,
    edge,
    gallai_bound,
)

DEFAULT_RETRIES = 16


class ChordUnplaceable(GraphError):
    def __init__(self, chords: list[Edge]) -> None:
        super().__init__(f"chords fit no extension tree: {chords}")
        self.chords = chords


class Infeasible(Exception):
    def __init__(self, tree_index: int, critical: list[Edge]) -> None:
        super().__init__(
            f"tree {tree_index}: no single path covers critical edges {critical}"
        )
        self.tree_index = tree_index
        self.critical = critical


@dataclass(frozen=True)
class BasicPathDecomposition:
    paths: tuple[Path, ...]

    @property
    def two_path_count(self) -> int:
        return sum(1 for p in self.paths if len(p) == 2)

    @property
    def one_path_count(self) -> int:
        return sum(1 for p in self.paths if len(p) == 1)


@dataclass(frozen=True)
class ExtensionTree:
    basic_index: int
    edges: frozenset[Edge]


@dataclass
class WeightMap:
    weight: dict[Edge, int] = field(default_factory=dict)

    def __getitem__(self, e: Edge) -> int:
        return self.weight.get(e, 0)

    def total(self) -> int:
        return sum(self.weight.values())


def spanning_tree(g: Graph) -> Graph:
    """BFS tree from label 1, neighbours in ascending order."""
    g.require_connected()
    seen = {1}
    queue = deque([1])
    edges = []
    while queue:
        u = queue.popleft()
        for w in sorted(g.neighbors(u)):
            if w not in seen:
                seen.add(w)
                edges.append(edge(u, w))
                queue.append(w)
    return Graph(g.n, frozenset(edges))


def basic_path_decomposition(
    t: Graph, rng: Optional[random.Random] = None
) -> BasicPathDecomposition:
    """Pair tree edges into 2-paths bottom-up from root 1.

    An odd edge count leaves one 1-path at the root. An even one pairs
    perfectly, and the first 2-path is then split so the total is still
    ``ceil(n / 2)``. With ``rng`` the root, the pairing at each vertex and
    the split 2-path are drawn at random instead.
    """
    if t.n < 2 or not t.is_tree():
        raise GraphError("basic_path_decomposition needs a tree with n >= 2")
    root = 1 if rng is None else rng.randint(1, t.n)
    parent = {root: 0}
    order = [root]
    for u in order:
        for w in sorted(t.neighbors(u)):
            if w not in parent:
                parent[w] = u
                order.append(w)
    # pending[v]: children of v whose edge to v is still unpaired
    pending: dict[int, list[int]] = {v: [] for v in order}
    paths: list[tuple[int, ...]] = []
    for v in reversed(order):
        waiting = pending[v]
        if rng is not None:
            rng.shuffle(waiting)
        while len(waiting) >= 2:
            a, b = waiting.pop(0), waiting.pop(0)
            paths.append((a, v, b))
        p = parent[v]
        if waiting:
            (c,) = waiting
            paths.append((c, v, p) if p else (c, v))
        elif p:
            pending[p].append(v)
    paths.sort(key=lambda x: Path(x).canonical())
    if t.e % 2 == 0:
        a, mid, b = paths.pop(rng.randrange(len(paths)) if rng is not None else 0)
        paths[:0] = [(a, mid), (mid, b)]
    return BasicPathDecomposition(tuple(Path(p) for p in paths))


def _touches_once(tree_vertices: set[int], e: Edge) -> bool:
    return (e[0] in tree_vertices) != (e[1] in tree_vertices)


def extend_to_trees(
    g: Graph,
    t: Graph,
    b: BasicPathDecomposition,
    chord_order: Optional[Sequence[Edge]] = None,
) -> list[ExtensionTree]:
    """Grow every basic path into a maximal tree of chords.

    Trees take turns adding one chord each. On its turn a tree attaches the
    chord that keeps it a tree and is currently held by the fewest trees,
    ties broken by ``chord_order`` (canonical by default). Turns repeat until
    no tree can grow, so each tree ends maximal. Raises
    :class:`ChordUnplaceable` if some chord joined no tree.
    """
    chords = sorted(g.edges - t.edges) if chord_order is None else list(chord_order)
    rank = {c: i for i, c in enumerate(chords)}
    grown = [set(p.edges()) for p in b.paths]
    verts = [set(p.vertices) for p in b.paths]
    held = dict.fromkeys(chords, 0)

    progress = True
    while progress:
        progress = False
        for i in range(len(grown)):
            options = [c for c in chords if _touches_once(verts[i], c)]
            if not options:
                continue
            c = min(options, key=lambda x: (held[x], rank[x]))
            grown[i].add(c)
            verts[i].update(c)
            held[c] += 1
            progress = True

    missing = sorted(c for c in chords if not held[c])
    if missing:
        raise ChordUnplaceable(missing)
    return [ExtensionTree(i, frozenset(es)) for i, es in enumerate(grown)]


def edge_weights(trees: Sequence[ExtensionTree]) -> WeightMap:
    w: dict[Edge, int] = {}
    for tr in trees:
        for e in tr.edges:
            w[e] = w.get(e, 0) + 1
    return WeightMap(w)


def _tree_paths(edges: set[Edge]) -> list[tuple[int, ...]]:
    """Every path with at least one edge in a forest, one orientation each."""
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    out = []
    for s in sorted(adj):
        stack = [(s, (s,))]
        while stack:
            node, route = stack.pop()
            if len(route) > 1 and route[0] < route[-1]:
                out.append(route)
            for w in adj[node]:
                if len(route) < 2 or w != route[-2]:
                    stack.append((w, route + (w,)))
    return out


MAX_SELECT_NODES = 200_000


def path_options(available: set[Edge], critical: set[Edge]) -> list[tuple[int, ...]]:
    """Paths in the forest ``available`` that contain every critical edge, longest first."""
    found = [
        route for route in _tree_paths(available) if critical <= set(Path(route).edges())
    ]
    found.sort(key=lambda r: (-len(r), r))
    return found


def select_paths(
    trees: Sequence[ExtensionTree], w: WeightMap, order: Optional[Sequence[int]] = None
) -> Decomposition:
    """Pick one path per tree so that every edge is used exactly once.

    An edge is critical in the current tree when its weight is 1: no later
    tree holds it, so it must be used now. Chosen edges drop to weight 0 and
    leave every other tree; the current tree's other edges lose one unit.
    Candidates through the critical edges are tried longest first, with
    depth-first backtracking over the trees and a memo of dead states.
    Raises :class:`Infeasible` naming the deepest tree that could not be
    served.
    """
    order = list(range(len(trees))) if order is None else list(order)
    dead: set[tuple[int, frozenset]] = set()
    deepest: list = [-1, None]
    budget = [MAX_SELECT_NODES]

    def search(pos: int, weight: dict[Edge, int]) -> Optional[list[tuple[int, ...]]]:
        if pos == len(order):
            return []
        key = (pos, frozenset(weight.items()))
        if key in dead:
            return None
        budget[0] -= 1
        if budget[0] < 0:
            return None
        tr = trees[order[pos]]
        available = {e for e in tr.edges if weight[e] > 0}
        critical = {e for e in available if weight[e] == 1}
        for route in path_options(available, critical):
            used = set(Path(route).edges())
            nxt = dict(weight)
            for e in available:
                nxt[e] = 0 if e in used else weight[e] - 1
            rest = search(pos + 1, nxt)
            if rest is not None:
                return [route] + rest
        if pos > deepest[0]:
            deepest[:] = [pos, (tr.basic_index, sorted(critical))]
        dead.add(key)
        return None

    routes = search(0, dict(w.weight))
    if routes is None:
        tree_index, critical = deepest[1] if deepest[1] else (order[0], [])
        raise Infeasible(tree_index, critical)
    by_tree = dict(zip(order, routes))
    return Decomposition(Path(by_tree[i]) for i in range(len(trees)))


def decompose_bpd_extend(
    g: Graph, retries: int = DEFAULT_RETRIES, seed: int | str | None = 0
) -> DecompResult:
    """Spanning tree, basic paths, chord trees, weights, selection.

    The first attempt uses the deterministic basic paths, attaches chords in
    canonical order and serves trees in index order. Each of up to
    ``retries`` further attempts redraws all three from a generator seeded
    by ``seed``. Selection backtracks over every
    combination for fixed trees, so the tree order alone never changes the
    verdict. Failure of the last attempt is returned as a structured result.
    """
    g.require_connected()
    if g.e == 0:
        return DecompResult("bpd-extend", Decomposition())
    t = spanning_tree(g)
    bpd = basic_path_decomposition(t)
    rng = random.Random(seed)
    chords = sorted(g.edges - t.edges)
    order = list(range(len(bpd.paths)))
    failure: Optional[Failure] = None
    for attempt in range(retries + 1):
        if attempt:
            bpd = basic_path_decomposition(t, rng)
            rng.shuffle(chords)
            rng.shuffle(order)
        try:
            trees = extend_to_trees(g, t, bpd, chords)
            d = select_paths(trees, edge_weights(trees), order)
        except ChordUnplaceable as exc:
            failure = Failure(
                "extend_to_trees",
                {"unplaceable_chords": [list(c) for c in exc.chords], "attempts": attempt + 1},
            )
            continue
        except Infeasible as exc:
            failure = Failure(
                "select_paths",
                {
                    "tree_index": exc.tree_index,
                    "critical_edges": [list(e) for e in exc.critical],
                    "attempts": attempt + 1,
                },
            )
            continue
        return DecompResult(
            "bpd-extend",
            d,
            stats={"attempts": attempt + 1, "basic_paths": len(bpd.paths), "bound": gallai_bound(g.n)},
        )
    return DecompResult("bpd-extend", failure=failure)
