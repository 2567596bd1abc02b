"""Hamiltonian path tables for ``K_2n`` and the split-and-merge decomposer.

A table is ``n`` edge-disjoint Hamiltonian paths that together use every edge
of ``K_2n``. Marking the consecutive pairs that are not edges of a smaller
graph cuts the rows into subpaths covering that graph; joining those
subpaths back together gives its decomposition.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence

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

#: exact re-decomposition of a group of paths is attempted up to this many edges
REARRANGE_MAX_EDGES = 15


@dataclass(frozen=True)
class PathTable:
    order: int
    rows: tuple[tuple[int, ...], ...]

    def __str__(self) -> str:
        return "\n".join(" ".join(map(str, r)) for r in self.rows)


@dataclass(frozen=True)
class Permutation:
    """Bijection on ``1..len(images)``; ``images[i - 1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise GraphError(f"{self.images} is not a permutation of 1..{len(self.images)}")

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(tuple(range(1, size + 1)))

    @classmethod
    def swap(cls, size: int, a: int, b: int) -> "Permutation":
        images = list(range(1, size + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(tuple(images))

    @classmethod
    def random(cls, size: int, seed: int | str | None = None) -> "Permutation":
        images = list(range(1, size + 1))
        random.Random(seed).shuffle(images)
        return cls(tuple(images))


@dataclass(frozen=True)
class PseudoPathTable:
    base: PathTable
    breaks: tuple[frozenset[int], ...]
    phantom_from: int

    @property
    def subpath_counts(self) -> tuple[int, ...]:
        return tuple(len(b) + 1 for b in self.breaks)

    def __str__(self) -> str:
        lines = []
        for row, cuts in zip(self.base.rows, self.breaks):
            parts = [str(row[0])]
            for i in range(1, len(row)):
                parts.append("x" if i - 1 in cuts else "")
                parts.append(str(row[i]))
            lines.append(" ".join(p for p in parts if p))
        return "\n".join(lines)


def build_table(order: int) -> PathTable:
    """Zigzag construction: rotations of ``0, 1, -1, 2, -2, ...`` modulo ``order``."""
    if order < 2 or order % 2:
        raise GraphError(f"path tables need an even order >= 2, got {order}")
    zigzag = [0]
    for k in range(1, order):
        zigzag.append((k + 1) // 2 if k % 2 else order - k // 2)
    rows = tuple(tuple((x + i) % order + 1 for x in zigzag) for i in range(order // 2))
    return PathTable(order, rows)


def verify_table(t: PathTable) -> bool:
    order = t.order
    if order < 2 or order % 2 or len(t.rows) != order // 2:
        return False
    labels = list(range(1, order + 1))
    seen: set[Edge] = set()
    end_count = dict.fromkeys(labels, 0)
    for row in t.rows:
        if sorted(row) != labels:
            return False
        for a, b in zip(row, row[1:]):
            e = edge(a, b)
            if e in seen:
                return False
            seen.add(e)
        end_count[row[0]] += 1
        end_count[row[-1]] += 1
    return len(seen) == order * (order - 1) // 2 and all(c == 1 for c in end_count.values())


def apply_permutation(t: PathTable, s: Permutation) -> PathTable:
    if len(s.images) != t.order:
        raise GraphError(f"permutation of size {len(s.images)} does not act on order {t.order}")
    return PathTable(t.order, tuple(tuple(s(x) for x in row) for row in t.rows))


def pseudo_table(t: PathTable, g: Graph) -> PseudoPathTable:
    """Break every consecutive pair that is not an edge of ``g``.

    Labels above ``g.n`` are phantoms and break on both sides.
    """
    if g.n > t.order:
        raise GraphError(f"graph with {g.n} vertices does not embed in order {t.order}")
    breaks = []
    for row in t.rows:
        breaks.append(
            frozenset(i for i in range(len(row) - 1) if not g.has_edge(row[i], row[i + 1]))
        )
    return PseudoPathTable(t, tuple(breaks), g.n + 1)


def split_subpaths(pt: PseudoPathTable) -> list[Path]:
    out = []
    for row, cuts in zip(pt.base.rows, pt.breaks):
        piece = [row[0]]
        for i in range(1, len(row)):
            if i - 1 in cuts:
                if len(piece) >= 2:
                    out.append(Path(piece))
                piece = []
            piece.append(row[i])
        if len(piece) >= 2:
            out.append(Path(piece))
    return out


def _exact_split(edges: list[Edge]) -> list[tuple[int, ...]]:
    from .oracle import exact_paths

    return exact_paths(edges)


def rearrange(d: Decomposition, max_edges: int = REARRANGE_MAX_EDGES, group: int = 3) -> Decomposition:
    """Cut groups of paths into pieces and rejoin them into fewer paths.

    For every group of up to ``group`` paths (pairs first, lowest indices
    first) whose edges number at most ``max_edges``, the group is replaced by
    a minimum decomposition of its edges whenever that is strictly smaller.
    Repeats until no group improves.
    """
    paths = [p.vertices for p in d.paths]
    improved = True
    while improved:
        improved = False
        for size in range(2, group + 1):
            for idx in itertools.combinations(range(len(paths)), size):
                es = [e for i in idx for e in Path(paths[i]).edges()]
                if len(es) > max_edges:
                    continue
                better = _exact_split(es)
                if len(better) < size:
                    keep = [p for i, p in enumerate(paths) if i not in idx]
                    paths = keep[: idx[0]] + list(better) + keep[idx[0] :]
                    improved = True
                    break
            if improved:
                break
    return Decomposition(paths)


def decompose_ham_table(g: Graph, table: Optional[PathTable] = None) -> DecompResult:
    """Embed ``g`` in the smallest even complete graph, split, then merge.

    Subpaths are joined end to end first; groups that still share vertices
    are then cut and rejoined. ``table`` overrides the built table.
    """
    g.require_connected()
    order = g.n + (g.n % 2)
    if table is None:
        table = build_table(max(order, 2))
    elif table.order < g.n:
        raise GraphError(f"table of order {table.order} cannot hold {g.n} vertices")
    pt = pseudo_table(table, g)
    pieces = split_subpaths(pt)
    joined = merge_at_shared_ends(g, Decomposition(pieces))
    final = rearrange(joined)
    return DecompResult(
        "ham-table",
        final,
        stats={
            "order": table.order,
            "subpaths": len(pieces),
            "after_join": len(joined),
            "subpath_counts": list(pt.subpath_counts),
            "bound": gallai_bound(g.n),
        },
    )


def observation_g_paths(pt: PseudoPathTable) -> Optional[list[Path]]:
    """Trimmed rows when every break sits at a row end, else None."""
    out = []
    for row, cuts in zip(pt.base.rows, pt.breaks):
        lo, hi = 0, len(row) - 1
        while lo in cuts:
            lo += 1
        while hi - 1 in cuts and hi - 1 >= lo:
            hi -= 1
        if any(lo <= c < hi for c in cuts):
            return None
        if hi > lo:
            out.append(Path(row[lo : hi + 1]))
    return out


def table_from_rows(rows: Sequence[Sequence[int]]) -> PathTable:
    return PathTable(len(rows[0]) if rows else 0, tuple(tuple(r) for r in rows))
