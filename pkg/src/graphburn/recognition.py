"""Spine decomposition and tree classification (path / spider / p-caterpillar)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import NotATree
from .graph import Graph, PathInGraph, is_tree, longest_path_in_tree

PATH = "Path"
SPIDER = "Spider"
CATERPILLAR = "Caterpillar"
PCATERPILLAR = "PCaterpillar"


@dataclass(frozen=True)
class HangingSubtree:
    """Subtree hanging off a spine vertex; ``depth`` counts edges from the spine."""

    root: int
    depth: int
    size: int
    vertices: tuple


@dataclass(frozen=True)
class SpineDecomposition:
    graph: Graph
    spine: PathInGraph
    legs: tuple  # legs[i]: HangingSubtrees attached to spine position i (0-based)
    leg_max: tuple
    leg_sum: tuple
    p: int
    # per-vertex spine attachment index and distance to the spine
    attach: tuple = field(repr=False)
    depth: tuple = field(repr=False)

    @property
    def l(self) -> int:
        return self.spine.order

    @property
    def n(self) -> int:
        return self.graph.n


@dataclass(frozen=True)
class TreeClass:
    tag: str
    p: int


def spine_decompose(g: Graph) -> SpineDecomposition:
    """Split a tree into its double-BFS spine and the subtrees hanging off it."""
    if not is_tree(g):
        raise NotATree("spine_decompose needs a tree")
    spine = longest_path_in_tree(g)
    on_spine = {v: i for i, v in enumerate(spine.vertices)}
    attach = [None] * g.n
    depth = [None] * g.n
    for v, i in on_spine.items():
        attach[v] = i
        depth[v] = 0

    legs = []
    for i, s in enumerate(spine.vertices):
        hanging = []
        for root in g.adj[s]:
            if root in on_spine:
                continue
            members = [root]
            attach[root], depth[root] = i, 1
            queue = deque([root])
            sub_depth = 1
            while queue:
                u = queue.popleft()
                for w in g.adj[u]:
                    if depth[w] is None:
                        depth[w] = depth[u] + 1
                        attach[w] = i
                        sub_depth = max(sub_depth, depth[w])
                        members.append(w)
                        queue.append(w)
            hanging.append(HangingSubtree(root, sub_depth, len(members), tuple(sorted(members))))
        legs.append(tuple(hanging))

    leg_max = tuple(max((h.depth for h in hs), default=0) for hs in legs)
    leg_sum = tuple(sum(h.size for h in hs) for hs in legs)
    return SpineDecomposition(
        graph=g,
        spine=spine,
        legs=tuple(legs),
        leg_max=leg_max,
        leg_sum=leg_sum,
        p=max(leg_max, default=0),
        attach=tuple(attach),
        depth=tuple(depth),
    )


def count_leaves(g: Graph) -> int:
    # an isolated vertex has degree 0 and is not counted
    return sum(1 for v in range(g.n) if len(g.adj[v]) == 1)


def classify(g: Graph, decomposition: SpineDecomposition | None = None) -> TreeClass:
    d = decomposition if decomposition is not None else spine_decompose(g)
    if d.p == 0:
        return TreeClass(PATH, 0)
    branch = sum(1 for v in range(g.n) if len(g.adj[v]) >= 3)
    if branch == 1:
        return TreeClass(SPIDER, d.p)
    if d.p == 1:
        return TreeClass(CATERPILLAR, 1)
    return TreeClass(PCATERPILLAR, d.p)


def classify_report(g: Graph) -> dict:
    """JSON-ready summary used by the ``classify`` subcommand."""
    d = spine_decompose(g)
    c = classify(g, d)
    return {
        "class": c.tag,
        "p": c.p,
        "l": d.l,
        "n": g.n,
        "leaves": count_leaves(g),
        "spine": list(d.spine.vertices),
    }
