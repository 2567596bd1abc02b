"""Graphs, paths, decompositions and the checks every decomposer is held to.

Vertices are labelled ``1..n``. Edges are stored as ``(u, v)`` with ``u < v``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class GraphError(ValueError):
    """Raised when a graph does not meet an operation's preconditions."""


class GraphParseError(GraphError):
    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class DisconnectedGraphError(GraphError):
    def __init__(self, components: list[list[int]]) -> None:
        shown = "; ".join("{" + ", ".join(map(str, c)) + "}" for c in components)
        super().__init__(f"graph is disconnected, components: {shown}")
        self.components = components


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]
    _adj: tuple[frozenset[int], ...] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"vertex count must be non-negative, got {self.n}")
        adj: list[set[int]] = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if u > v:
                raise GraphError(f"edge {(u, v)} not canonical")
            if not (1 <= u and v <= self.n):
                raise GraphError(f"edge {(u, v)} has a label outside 1..{self.n}")
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        canon = set()
        for u, v in edges:
            e = edge(u, v)
            if e in canon:
                raise GraphError(f"duplicate edge {e}")
            canon.add(e)
        return cls(n, frozenset(canon))

    @property
    def e(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(self._adj[v]) for v in self.vertices()), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 < u <= self.n and v in self._adj[u]

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def non_isolated(self) -> list[int]:
        return [v for v in self.vertices() if self._adj[v]]

    def components(self) -> list[list[int]]:
        """Connected components as sorted label lists (isolated vertices included)."""
        seen = [False] * (self.n + 1)
        comps = []
        for s in self.vertices():
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def edge_components(self) -> list[frozenset[Edge]]:
        """Edge sets of the components that carry at least one edge."""
        out = []
        for comp in self.components():
            if len(comp) > 1:
                members = set(comp)
                out.append(frozenset(e for e in self.edges if e[0] in members))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.n >= 1 and self.e == self.n - 1 and self.is_connected()

    def without(self, removed: Iterable[Edge]) -> "Graph":
        return Graph(self.n, self.edges - frozenset(removed))

    def require_connected(self) -> None:
        if not self.is_connected():
            raise DisconnectedGraphError(self.components())


class Path:
    """A simple path given by its vertex sequence.

    A path and its reverse compare and hash equal.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices: Iterable[int]) -> None:
        self.vertices: tuple[int, ...] = tuple(vertices)

    def __len__(self) -> int:
        return max(len(self.vertices) - 1, 0)

    @property
    def length(self) -> int:
        return len(self)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def canonical(self) -> tuple[int, ...]:
        rev = self.vertices[::-1]
        return min(self.vertices, rev)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Path):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())

    def __repr__(self) -> str:
        return f"Path({'-'.join(map(str, self.vertices))})"

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def edges(self) -> list[Edge]:
        vs = self.vertices
        return [edge(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]

    def is_simple(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    def reversed(self) -> "Path":
        return Path(self.vertices[::-1])


class Decomposition:
    """Edge-disjoint paths; equality ignores path order and orientation."""

    __slots__ = ("paths",)

    def __init__(self, paths: Iterable[Path | Sequence[int]] = ()) -> None:
        self.paths: tuple[Path, ...] = tuple(
            p if isinstance(p, Path) else Path(p) for p in paths
        )

    def __repr__(self) -> str:
        return f"Decomposition({list(self.paths)})"

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self) -> Iterator[Path]:
        return iter(self.paths)

    def _key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(p.canonical() for p in self.paths))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def as_lists(self) -> list[list[int]]:
        return [list(p.vertices) for p in self.paths]

    def edges(self) -> list[Edge]:
        return [e for p in self.paths for e in p.edges()]


@dataclass(frozen=True)
class VerifyReport:
    valid: bool
    covers_all_edges: bool
    edge_disjoint: bool
    paths_simple: bool
    path_count: int
    bound: int
    within_bound: bool
    offending_items: tuple[str, ...] = ()


@dataclass(frozen=True)
class Failure:
    stage: str
    detail: dict

    def to_json(self) -> dict:
        return {"stage": self.stage, "detail": self.detail}


@dataclass(frozen=True)
class DecompResult:
    """Outcome of a decomposer: a decomposition or a structured failure."""

    method: str
    decomposition: Optional[Decomposition] = None
    failure: Optional[Failure] = None
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def ok(self) -> bool:
        return self.failure is None and self.decomposition is not None

    @property
    def path_count(self) -> Optional[int]:
        return len(self.decomposition) if self.ok else None


def gallai_bound(n: int) -> int:
    """The conjectured worst case ``ceil(n / 2)`` for a connected ``n``-vertex graph."""
    if n < 1:
        raise GraphError(f"gallai_bound needs n >= 1, got {n}")
    return (n + 1) // 2


def degree_lower_bound(g: Graph) -> int:
    """At least ``(d + 1) // 2`` paths pass through a vertex of degree ``d``."""
    return (g.max_degree() + 1) // 2


def odd_degree_count(g: Graph) -> int:
    return sum(1 for v in g.vertices() if g.degree(v) % 2)


def verify_decomposition(g: Graph, d: Decomposition) -> VerifyReport:
    problems: list[str] = []
    paths_simple = True
    edge_disjoint = True
    seen: dict[Edge, int] = {}
    for i, p in enumerate(d.paths):
        if len(p.vertices) < 2:
            paths_simple = False
            problems.append(f"path {i} has no edges")
            continue
        if not p.is_simple():
            paths_simple = False
            problems.append(f"path {i} repeats a vertex: {list(p.vertices)}")
        for e in p.edges():
            if e not in g.edges:
                paths_simple = False
                problems.append(f"path {i} uses non-edge {e[0]}-{e[1]}")
            elif e in seen:
                edge_disjoint = False
                problems.append(f"edge {e[0]}-{e[1]} reused by paths {seen[e]} and {i}")
            else:
                seen[e] = i
    missing = sorted(g.edges - seen.keys())
    for e in missing:
        problems.append(f"edge {e[0]}-{e[1]} uncovered")
    covers = not missing
    bound = gallai_bound(g.n) if g.n >= 1 else 0
    return VerifyReport(
        valid=covers and edge_disjoint and paths_simple,
        covers_all_edges=covers,
        edge_disjoint=edge_disjoint,
        paths_simple=paths_simple,
        path_count=len(d),
        bound=bound,
        within_bound=len(d) <= bound,
        offending_items=tuple(problems),
    )


def _join_at_shared_end(a: tuple[int, ...], b: tuple[int, ...]) -> Optional[tuple[int, ...]]:
    """Concatenate two paths at a common end vertex if the result is simple."""
    if set(a) & set(b) == set():
        return None
    for left in (a, a[::-1]):
        for right in (b, b[::-1]):
            if left[-1] == right[0] and len(set(left) & set(right)) == 1:
                return left + right[1:]
    return None


def merge_at_shared_ends(g: Graph, d: Decomposition) -> Decomposition:
    """Concatenate paths that share an end vertex until no such join stays simple.

    The lowest-index mergeable pair ``(i, j)`` is joined first; the result
    takes slot ``i`` and ``j`` is dropped.
    """
    paths = [p.vertices for p in d.paths]
    changed = True
    while changed:
        changed = False
        for i in range(len(paths)):
            for j in range(i + 1, len(paths)):
                joined = _join_at_shared_end(paths[i], paths[j])
                if joined is not None:
                    paths[i] = joined
                    del paths[j]
                    changed = True
                    break
            if changed:
                break
    return Decomposition(paths)


# -- text formats -------------------------------------------------------------


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _ints(lineno: int, line: str, count: int, what: str) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise GraphParseError(lineno, f"expected {count} integers for {what}, got {line!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise GraphParseError(lineno, f"non-integer token in {what}: {line!r}") from None


def parse_graph(text: str) -> Graph:
    lines = list(_content_lines(text))
    if not lines:
        raise GraphParseError(0, "missing 'n m' header")
    lineno, header = lines[0]
    n, m = _ints(lineno, header, 2, "header 'n m'")
    if n < 1 or m < 0:
        raise GraphParseError(lineno, f"bad header values n={n} m={m}")
    body = lines[1:]
    if len(body) != m:
        raise GraphParseError(
            body[-1][0] if body else lineno, f"header promises {m} edges, found {len(body)}"
        )
    edges: dict[Edge, int] = {}
    for lineno, line in body:
        u, v = _ints(lineno, line, 2, "edge 'u v'")
        if u == v:
            raise GraphParseError(lineno, f"self-loop at {u}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphParseError(lineno, f"label out of range 1..{n} in {line!r}")
        e = edge(u, v)
        if e in edges:
            raise GraphParseError(lineno, f"duplicate edge {e[0]} {e[1]} (first on line {edges[e]})")
        edges[e] = lineno
    return Graph(n, frozenset(edges))


def serialize_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.e}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str) -> Decomposition:
    paths = []
    for lineno, line in _content_lines(text):
        try:
            paths.append(Path(int(tok) for tok in line.split()))
        except ValueError:
            raise GraphParseError(lineno, f"non-integer token in {line!r}") from None
    return Decomposition(paths)


def serialize_decomposition(d: Decomposition) -> str:
    return "".join(" ".join(map(str, p.vertices)) + "\n" for p in d.paths)
