"""Immutable undirected graphs on dense 0-based vertex ids, plus BFS primitives.

Text format (one graph per file)::

    # comment lines are ignored
    5
    0 1
    1 2

Line 1 (after comments) is the vertex count, every further non-empty line
is one edge ``u v``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    DuplicateEdge,
    EndpointOutOfRange,
    GraphFormatError,
    NotATree,
    SelfLoop,
)

# Distance entry for vertices that BFS never reaches.
UNREACHABLE = None


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset
    adj: tuple

    def neighbors(self, v: int) -> tuple:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def edge_list(self) -> list:
        return sorted(self.edges)

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise EndpointOutOfRange(f"vertex {v!r} not in 0..{self.n - 1}")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"


@dataclass(frozen=True)
class PathInGraph:
    vertices: tuple

    @property
    def order(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self):
        return len(self.vertices)


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate ``edges`` and return the graph on vertices ``0..n-1``."""
    if n < 0:
        raise EndpointOutOfRange(f"negative vertex count {n}")
    seen = set()
    adj = [[] for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        for x in (u, v):
            if not 0 <= x < n:
                raise EndpointOutOfRange(f"edge ({u}, {v}) has endpoint outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdge(f"duplicate edge {key}")
        seen.add(key)
        adj[u].append(v)
        adj[v].append(u)
    return Graph(n, frozenset(seen), tuple(tuple(sorted(a)) for a in adj))


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def distances_from(g: Graph, source: int) -> list:
    """Hop distances from ``source``; unreachable vertices get ``UNREACHABLE``."""
    g.check_vertex(source)
    dist = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in g.adj[u]:
            if dist[w] is UNREACHABLE:
                dist[w] = du
                queue.append(w)
    return dist


def _bfs_parents(g: Graph, source: int):
    dist = [UNREACHABLE] * g.n
    parent = [None] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] is UNREACHABLE:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
    return dist, parent


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return all(d is not UNREACHABLE for d in distances_from(g, 0))


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and len(g.edges) == g.n - 1 and is_connected(g)


def ball(g: Graph, center: int, radius: int) -> frozenset:
    """Closed neighbourhood of ``center`` with the given radius."""
    g.check_vertex(center)
    if radius < 0:
        return frozenset()
    out = {center}
    frontier = [center]
    for _ in range(radius):
        nxt = []
        for u in frontier:
            for w in g.adj[u]:
                if w not in out:
                    out.add(w)
                    nxt.append(w)
        if not nxt:
            break
        frontier = nxt
    return frozenset(out)


def _farthest(dist) -> int:
    best, arg = -1, 0
    for v, d in enumerate(dist):
        if d is not UNREACHABLE and d > best:
            best, arg = d, v
    return arg


def longest_path_in_tree(g: Graph) -> PathInGraph:
    """Diameter path of a tree via double BFS.

    Both sweeps pick the smallest-id farthest vertex; the first sweep starts
    at vertex 0. The path runs from the second sweep's farthest vertex back
    to the first sweep's.
    """
    if not is_tree(g):
        raise NotATree("longest_path_in_tree needs a tree")
    a = _farthest(distances_from(g, 0))
    dist, parent = _bfs_parents(g, a)
    b = _farthest(dist)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return PathInGraph(tuple(path))


def tree_path(g: Graph, source: int, target: int) -> list:
    """Vertices of the unique source-target path in a tree (or a BFS path)."""
    _, parent = _bfs_parents(g, target)
    if source != target and parent[source] is None:
        raise NotATree(f"no path between {source} and {target}")
    path = [source]
    while path[-1] != target:
        path.append(parent[path[-1]])
    return path


def induced_subgraph(g: Graph, vertices: Iterable[int]):
    """Return ``(sub, old_ids)``: the induced subgraph relabelled densely.

    ``old_ids[i]`` is the original id of new vertex ``i``; relabelling keeps
    the original id order.
    """
    old_ids = sorted(set(vertices))
    new_id = {v: i for i, v in enumerate(old_ids)}
    edges = [(new_id[u], new_id[v]) for u, v in g.edges if u in new_id and v in new_id]
    return build_graph(len(old_ids), sorted(edges)), old_ids


# -- text format -----------------------------------------------------------

def parse_graph(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphFormatError("empty graph file")
    try:
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise GraphFormatError(f"bad edge line {ln!r}")
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        if isinstance(exc, GraphFormatError):
            raise
        raise GraphFormatError(str(exc)) from exc
    return build_graph(n, edges)


def format_graph(g: Graph) -> str:
    out = [str(g.n)]
    out.extend(f"{u} {v}" for u, v in g.edge_list())
    return "\n".join(out) + "\n"


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(g: Graph, path) -> None:
    Path(path).write_text(format_graph(g), encoding="utf-8", newline="\n")
