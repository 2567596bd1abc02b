"""Pure-Python branch-and-bound kernel for minimum path decompositions.

Mirrors ``_oracle_kernel.pyx`` step for step; both must return identical
results for identical input.
"""

from __future__ import annotations

import sys


def solve(nv: int, edges: list[tuple[int, int]], upper: int, max_nodes: int = 0):
    """Minimum number of edge-disjoint simple paths covering ``edges``.

    ``edges`` are ``(a, b)`` pairs over vertices ``0..nv-1`` with ``a < b``.
    Only solutions with fewer than ``upper`` paths are searched for.
    ``max_nodes`` > 0 caps the search nodes. Returns
    ``(minimum, witness, nodes, complete)``; ``minimum`` is ``upper`` and
    ``witness`` empty when nothing smaller was found.
    """
    m = len(edges)
    if m > 64:
        raise ValueError("kernel supports at most 64 edges")
    adj: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
    for i, (a, b) in enumerate(edges):
        adj[a].append((b, i))
        adj[b].append((a, i))
    for lst in adj:
        lst.sort()

    deg = [len(lst) for lst in adj]
    state = {
        "covered": 0,
        "odd": sum(d & 1 for d in deg),
        "best": upper,
        "witness": [],
        "nodes": 0,
        "stop": False,
    }
    full = (1 << m) - 1
    sol: list[tuple[int, ...]] = []

    def lower_bound() -> int:
        top = 0
        for d in deg:
            if d > top:
                top = d
        lb = max((state["odd"] + 1) // 2, (top + 1) // 2)
        return lb if lb > 0 else 1

    root_lb = lower_bound() if m else 0

    def cover(i: int) -> None:
        a, b = edges[i]
        state["covered"] |= 1 << i
        deg[a] -= 1
        deg[b] -= 1
        state["odd"] += (1 if deg[a] & 1 else -1) + (1 if deg[b] & 1 else -1)

    def uncover(i: int) -> None:
        a, b = edges[i]
        state["covered"] &= ~(1 << i)
        deg[a] += 1
        deg[b] += 1
        state["odd"] += (1 if deg[a] & 1 else -1) + (1 if deg[b] & 1 else -1)

    def search(depth: int) -> None:
        state["nodes"] += 1
        if max_nodes and state["nodes"] > max_nodes:
            state["stop"] = True
            return
        covered = state["covered"]
        if covered == full:
            state["best"] = depth
            state["witness"] = list(sol)
            if depth <= root_lb:
                state["stop"] = True
            return
        if depth + lower_bound() >= state["best"]:
            return
        free = ~covered & full
        e0 = (free & -free).bit_length() - 1
        a, b = edges[e0]
        cover(e0)
        side_a = [a]
        side_b = [b]
        used = (1 << a) | (1 << b)

        def grow_b(v: int) -> None:
            nonlocal used
            for w, i in adj[v]:
                if state["stop"]:
                    return
                if not (state["covered"] >> i) & 1 and not (used >> w) & 1:
                    cover(i)
                    used |= 1 << w
                    side_b.append(w)
                    grow_b(w)
                    side_b.pop()
                    used &= ~(1 << w)
                    uncover(i)
            if state["stop"]:
                return
            sol.append(tuple(side_a[::-1] + side_b))
            search(depth + 1)
            sol.pop()

        def grow_a(v: int) -> None:
            nonlocal used
            for w, i in adj[v]:
                if state["stop"]:
                    return
                if not (state["covered"] >> i) & 1 and not (used >> w) & 1:
                    cover(i)
                    used |= 1 << w
                    side_a.append(w)
                    grow_a(w)
                    side_a.pop()
                    used &= ~(1 << w)
                    uncover(i)
            if state["stop"]:
                return
            grow_b(b)

        grow_a(a)
        uncover(e0)

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10_000))
    try:
        search(0)
    finally:
        sys.setrecursionlimit(limit)
    complete = not (max_nodes and state["nodes"] > max_nodes)
    return state["best"], state["witness"], state["nodes"], complete
