"""Rooted pseudo trees: a BFS unrolling of a graph in which every edge occurs once.

Each vertex first appears where BFS discovers it. Every other edge reaching an
already-placed vertex adds a duplicate leaf carrying the same label, and the
duplicate is joined to the first occurrence by a pseudo edge. The tree has
``e + 1`` nodes and ``e + 1 - n`` pseudo edges.

Path pairs are grown outward from both ends of each pseudo edge, then glued
back together at the shared label.
"""

from __future__ import annotations

import logging
import random
from collections import deque
from dataclasses import dataclass
from typing import Literal, Optional

from .graph import (
    DecompResult,
    Decomposition,
    Edge,
    Graph,
    GraphError,
    Path,
    edge,
    gallai_bound,
    merge_at_shared_ends,
)

log = logging.getLogger(__name__)

WalkOrder = Literal["descending", "ascending", "random"]


def bfs_label(g: Graph, start: int = 1) -> dict[int, int]:
    """Relabel so ``start`` becomes 1 and labels follow BFS discovery.

    Neighbours are discovered in ascending original label. Returns the map
    original label -> new label.
    """
    if not 1 <= start <= g.n:
        raise GraphError(f"start vertex {start} outside 1..{g.n}")
    g.require_connected()
    mapping = {start: 1}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in sorted(g.neighbors(u)):
            if w not in mapping:
                mapping[w] = len(mapping) + 1
                queue.append(w)
    return mapping


def relabel(g: Graph, mapping: dict[int, int]) -> Graph:
    if sorted(mapping) != list(g.vertices()) or sorted(mapping.values()) != list(g.vertices()):
        raise GraphError("relabeling is not a permutation of the vertex labels")
    return Graph(g.n, frozenset(edge(mapping[u], mapping[v]) for u, v in g.edges))


@dataclass(frozen=True)
class PseudoTree:
    labels: tuple[int, ...]
    parent: tuple[int, ...]
    pseudo_edges: tuple[tuple[int, int], ...]
    n: int

    root = 0

    @property
    def nodes(self) -> list[tuple[int, int]]:
        return list(enumerate(self.labels))

    @property
    def tree_edges(self) -> dict[tuple[int, int], Edge]:
        """(parent node, child node) -> the graph edge it realises."""
        return {
            (p, c): edge(self.labels[p], self.labels[c])
            for c, p in enumerate(self.parent)
            if p >= 0
        }

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in self.labels]
        for c, p in enumerate(self.parent):
            if p >= 0:
                kids[p].append(c)
        return kids

    def dump(self) -> str:
        lines = [f"{i} {lab} {self.parent[i]}" for i, lab in enumerate(self.labels)]
        lines += [f"{a} {b}" for a, b in self.pseudo_edges]
        return "\n".join(lines) + "\n"


def build_pseudo_tree(g: Graph, relabeling: Optional[dict[int, int]] = None) -> PseudoTree:
    """Unroll ``g`` (optionally relabelled first) from label 1.

    Duplicates are linked to the first occurrence of their label, which keeps
    the pseudo-edge count at ``e + 1 - n`` even for labels seen three or more
    times.
    """
    if relabeling is not None:
        g = relabel(g, relabeling)
    g.require_connected()
    labels = [1]
    parent = [-1]
    first = {1: 0}
    pseudo = []
    done: set[Edge] = set()
    queue = deque([0])
    while queue:
        node = queue.popleft()
        u = labels[node]
        for w in sorted(g.neighbors(u)):
            e = edge(u, w)
            if e in done:
                continue
            done.add(e)
            child = len(labels)
            labels.append(w)
            parent.append(node)
            if w in first:
                pseudo.append((first[w], child))
            else:
                first[w] = child
                queue.append(child)
    return PseudoTree(tuple(labels), tuple(parent), tuple(pseudo), g.n)


@dataclass(frozen=True)
class PairResult:
    path_pairs: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    single_paths: tuple[Path, ...]

    @property
    def D(self) -> int:
        return len(self.path_pairs)

    @property
    def S(self) -> int:
        return len(self.single_paths)

    def edges(self) -> list[Edge]:
        out = []
        for a, b in self.path_pairs:
            out += Path(a).edges() + Path(b).edges()
        for p in self.single_paths:
            out += p.edges()
        return out


def pair_walks(
    t: PseudoTree, order: WalkOrder = "descending", seed: int | str | None = None
) -> PairResult:
    """Grow a path pair from each pseudo edge, then cover leftovers greedily.

    A walk leaves a pseudo-edge end along unused tree edges, taking the
    smallest node id, and halts on reaching the end of another pseudo edge or
    when every way on is used or would repeat a label. The second walk of a
    pair also avoids labels used by the first, so the pair glues into a
    simple path. ``order`` sets the pseudo-edge schedule by duplicated label;
    ``"random"`` shuffles the schedule and the neighbour choice.
    """
    rng = random.Random(seed) if order == "random" else None
    kids = t.children()
    used = [False] * len(t.labels)  # tree edge keyed by its child node
    endpoints = {x for pe in t.pseudo_edges for x in pe}

    def steps(node: int) -> list[int]:
        out = [c for c in kids[node] if not used[c]]
        p = t.parent[node]
        if p >= 0 and not used[node]:
            out.append(p)
        return out

    def walk(start: int, pe: tuple[int, int], avoid: set[int]) -> tuple[int, ...]:
        route = [start]
        seen = set(avoid) | {t.labels[start]}
        cur = start
        while True:
            options = sorted(x for x in steps(cur) if t.labels[x] not in seen)
            if not options:
                break
            nxt = rng.choice(options) if rng else options[0]
            used[nxt if t.parent[nxt] == cur else cur] = True
            route.append(nxt)
            seen.add(t.labels[nxt])
            cur = nxt
            if nxt in endpoints and nxt not in pe:
                break
        return tuple(t.labels[x] for x in route)

    schedule = list(t.pseudo_edges)
    if order == "random":
        rng.shuffle(schedule)
    else:
        schedule.sort(key=lambda pe: (t.labels[pe[0]], pe[1]), reverse=(order == "descending"))

    pairs = []
    for pe in schedule:
        a = walk(pe[0], pe, set())
        b = walk(pe[1], pe, set(a))
        if len(a) > 1 or len(b) > 1:
            pairs.append((a, b))

    singles = [Path(t.labels[x] for x in route) for route in _leftover_paths(t, kids, used)]
    return PairResult(tuple(pairs), tuple(singles))


def _leftover_paths(t: PseudoTree, kids: list[list[int]], used: list[bool]) -> list[list[int]]:
    """Longest-first extraction of label-simple paths from the unused forest."""
    adj: dict[int, set[int]] = {}
    for c, p in enumerate(t.parent):
        if p >= 0 and not used[c]:
            adj.setdefault(p, set()).add(c)
            adj.setdefault(c, set()).add(p)
    out = []
    while adj:
        best: list[int] = []
        for s in sorted(adj):
            # tree paths from s are unique; DFS with the label set on the stack
            stack = [(s, [s], {t.labels[s]})]
            while stack:
                node, route, labs = stack.pop()
                if len(route) > len(best) or (len(route) == len(best) and route < best):
                    best = route
                for w in adj[node]:
                    if (len(route) < 2 or w != route[-2]) and t.labels[w] not in labs:
                        stack.append((w, route + [w], labs | {t.labels[w]}))
        for x, y in zip(best, best[1:]):
            adj[x].discard(y)
            adj[y].discard(x)
        for x in best:
            if not adj[x]:
                del adj[x]
        out.append(best)
    return out


def contract(t: PseudoTree, r: PairResult) -> Decomposition:
    """Glue each pair at its shared label; a pair that would repeat a vertex stays split."""
    paths = []
    for a, b in r.path_pairs:
        if a[0] != b[0]:
            raise GraphError(f"pair {a} / {b} does not share its start label")
        if len(a) == 1:
            paths.append(Path(b))
        elif len(b) == 1:
            paths.append(Path(a))
        else:
            joined = a[::-1] + b[1:]
            if len(set(joined)) == len(joined):
                paths.append(Path(joined))
            else:
                log.info("pair %s / %s kept split: gluing repeats a vertex", a, b)
                paths += [Path(a), Path(b)]
    paths += r.single_paths
    return Decomposition(paths)


def edge_count_bound(e: int) -> int:
    if e < 0:
        raise ValueError(f"edge count must be non-negative, got {e}")
    return (e + 2) // 2


def pairs_within_bound(r: PairResult, n: int) -> bool:
    return r.D + r.S <= gallai_bound(n)


def decompose_pseudo_tree(
    g: Graph, start: int = 1, order: WalkOrder = "descending", seed: int | str | None = None
) -> DecompResult:
    """Label, unroll, pair, contract, and map the paths back to ``g``'s labels.

    On dense graphs most walks halt after one step at the next pseudo edge,
    so the contraction alone can exceed ``(e + 2) // 2``; in that case the
    cover is merged at shared ends before it is returned.
    """
    mapping = bfs_label(g, start)
    back = {new: old for old, new in mapping.items()}
    tree = build_pseudo_tree(g, mapping)
    pairs = pair_walks(tree, order, seed)
    d = contract(tree, pairs)
    d = Decomposition(Path(back[v] for v in p.vertices) for p in d.paths)
    contracted = len(d)
    bound = edge_count_bound(g.e)
    if contracted > bound:
        d = merge_at_shared_ends(g, d)
    return DecompResult(
        "pseudo-tree",
        d,
        stats={
            "D": pairs.D,
            "S": pairs.S,
            "pairs_within_bound": pairs_within_bound(pairs, g.n),
            "edge_count_bound": bound,
            "contracted_paths": contracted,
            "merged": contracted > bound,
        },
    )
