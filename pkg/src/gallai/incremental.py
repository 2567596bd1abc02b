"""Edge-by-edge decomposer: start from a tree cover, then insert the chords.

While the cover has fewer than ``ceil(n / 2)`` paths a new chord becomes its
own path. Otherwise it is appended to a path that ends at one of its
endpoints and avoids the other; failing that the cover is merged once and
the search repeated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Literal, Optional

from .bpd import spanning_tree
from .graph import (
    DecompResult,
    Decomposition,
    Edge,
    Failure,
    Graph,
    GraphError,
    Path,
    gallai_bound,
    merge_at_shared_ends,
)
from .mepp import decompose_tree_mepp

Action = Literal["new_path", "appended_at_u", "appended_at_v", "reshuffled_then_appended", "failed"]


@dataclass(frozen=True)
class InsertTrace:
    edge: Edge
    action: Action
    path_index: Optional[int] = None

    def to_json(self) -> dict:
        return {"edge": list(self.edge), "action": self.action, "path_index": self.path_index}


def find_extendable_path(d: Decomposition, u: int, v: int) -> Optional[int]:
    """Lowest index of a path ending at ``u`` without ``v``, or ending at ``v`` without ``u``."""
    for i, p in enumerate(d.paths):
        ends = p.ends
        if u in ends and v not in p.vertices:
            return i
        if v in ends and u not in p.vertices:
            return i
    return None


def _append(p: Path, u: int, v: int) -> tuple[Path, Action]:
    vs = p.vertices
    if u in (vs[0], vs[-1]) and v not in vs:
        at, new, action = u, v, "appended_at_u"
    else:
        at, new, action = v, u, "appended_at_v"
    vs = vs if vs[-1] == at else vs[::-1]
    return Path(vs + (new,)), action


def insert_edge(
    g_next: Graph, d: Decomposition, uv: Edge
) -> tuple[Decomposition, InsertTrace]:
    u, v = uv
    if not g_next.has_edge(u, v):
        raise GraphError(f"{u}-{v} is not an edge of the target graph")
    paths = list(d.paths)
    if len(paths) < gallai_bound(g_next.n):
        paths.append(Path((u, v)))
        return Decomposition(paths), InsertTrace(uv, "new_path", len(paths) - 1)
    idx = find_extendable_path(d, u, v)
    if idx is not None:
        paths[idx], action = _append(paths[idx], u, v)
        return Decomposition(paths), InsertTrace(uv, action, idx)
    merged = merge_at_shared_ends(g_next.without([uv]), d)
    paths = list(merged.paths)
    if len(paths) < gallai_bound(g_next.n):
        paths.append(Path((u, v)))
        return Decomposition(paths), InsertTrace(uv, "reshuffled_then_appended", len(paths) - 1)
    idx = find_extendable_path(merged, u, v)
    if idx is not None:
        paths[idx], _ = _append(paths[idx], u, v)
        return Decomposition(paths), InsertTrace(uv, "reshuffled_then_appended", idx)
    return d, InsertTrace(uv, "failed")


def decompose_incremental(
    g: Graph,
    order: Literal["canonical", "shuffled"] = "canonical",
    seed: int | str | None = None,
) -> DecompResult:
    """Spanning tree, tree peel, then chords one at a time.

    Chords that cannot be placed are deferred and retried in further passes
    until a pass places nothing. Any chord still unplaced makes the result a
    structured failure listing the skipped edges and the partial cover.
    """
    g.require_connected()
    t = spanning_tree(g)
    base = decompose_tree_mepp(t)
    if not base.ok:
        return DecompResult("incremental", failure=base.failure)
    d = base.decomposition
    chords = sorted(g.edges - t.edges)
    if order == "shuffled":
        random.Random(seed).shuffle(chords)
    present = set(t.edges)
    traces: list[InsertTrace] = []
    deferred: list[Edge] = []
    pending = chords
    while pending:
        # A chord that fails is retried after the others, since each insertion
        # changes which path ends are available.
        retry = []
        for c in pending:
            present.add(c)
            nd, tr = insert_edge(Graph(g.n, frozenset(present)), d, c)
            if tr.action == "failed":
                present.discard(c)
                retry.append(c)
            else:
                d = nd
                traces.append(tr)
        if len(retry) == len(pending):
            traces.extend(InsertTrace(c, "failed") for c in retry)
            break
        deferred.extend(c for c in retry if c not in deferred)
        pending = retry
    stats = {
        "trace": [tr.to_json() for tr in traces],
        "initial_paths": len(base.decomposition),
        "deferred": [list(c) for c in deferred],
    }
    failed = [list(tr.edge) for tr in traces if tr.action == "failed"]
    if failed:
        return DecompResult(
            "incremental",
            failure=Failure(
                "insert_edge",
                {"failed_edges": failed, "partial_paths": d.as_lists()},
            ),
            stats=stats,
        )
    return DecompResult("incremental", d, stats=stats)
