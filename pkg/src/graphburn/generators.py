"""Seeded generators for trees, caterpillars and 3-partition instances.

All randomness comes from SplitMix64, defined by the recurrence::

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output z ^ (z >> 31)

Bounded integers use rejection on the top of the 64-bit range, so a stream
can be reproduced bit for bit in any language.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from .engine import sqrt_ceil
from .errors import GenerationFailed, InfeasibleSpec
from .graph import Graph, build_graph, format_graph
from .recognition import count_leaves, spine_decompose

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

KINDS = ("caterpillar", "p_caterpillar", "tree", "three_partition", "leafy")


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in ``0..n-1``."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in ``lo..hi`` inclusive."""
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]


@dataclass(frozen=True)
class GenSpec:
    kind: str
    seed: int
    n: int | None = None
    l: int | None = None
    p: int | None = None
    n_triples: int | None = None

    def to_json(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    @classmethod
    def from_json(cls, obj: dict) -> "GenSpec":
        return cls(**obj)


def _path_edges(l: int):
    return [(i, i + 1) for i in range(l - 1)]


def random_caterpillar(n: int, l: int, seed: int) -> Graph:
    """Spine 0..l-1 plus n-l leaves hung uniformly on the internal spine vertices."""
    if not 1 <= l <= n:
        raise InfeasibleSpec(f"need 1 <= l <= n (got n={n}, l={l})")
    if n > l and l < 3:
        raise InfeasibleSpec("legs need an internal spine vertex, so l >= 3")
    rng = SplitMix64(seed)
    edges = _path_edges(l)
    for v in range(l, n):
        edges.append((1 + rng.below(l - 2), v))
    return build_graph(n, edges)


def _grow_p_caterpillar(n: int, l: int, p: int, rng: SplitMix64) -> Graph:
    # cap[i]: deepest leg allowed at spine position i, so no leg outgrows the spine ends
    cap = [min(i, l - 1 - i, p) for i in range(l)]
    depth = [0] * l
    root = list(range(l))
    open_parents = [i for i in range(l) if cap[i] > 0]
    edges = _path_edges(l)
    for v in range(l, n):
        u = rng.choice(open_parents)
        edges.append((u, v))
        depth.append(depth[u] + 1)
        root.append(root[u])
        if depth[v] < cap[root[v]]:
            open_parents.append(v)
    return build_graph(n, edges)


def random_p_caterpillar(n: int, p: int, seed: int, l: int | None = None, retries: int = 64) -> Graph:
    """Random tree whose vertices all lie within distance p of its computed spine.

    The spine order is drawn from ``2p+1..n`` unless ``l`` is given. Legs are
    grown one vertex at a time below random open parents; a draw is kept
    only if the recognition module confirms ``p`` for its own spine.
    """
    if p < 1:
        raise InfeasibleSpec("p must be at least 1")
    if n < 2 * p + 1:
        raise InfeasibleSpec(f"depth {p} needs at least {2 * p + 1} vertices (got {n})")
    if l is not None and not 2 * p + 1 <= l <= n:
        raise InfeasibleSpec(f"spine order {l} must lie in {2 * p + 1}..{n}")
    rng = SplitMix64(seed)
    for _ in range(retries):
        spine = l if l is not None else rng.between(2 * p + 1, n)
        g = _grow_p_caterpillar(n, spine, p, rng)
        if spine_decompose(g).p <= p:
            return g
    raise GenerationFailed(f"no {p}-caterpillar accepted after {retries} draws")


def random_tree(n: int, seed: int) -> Graph:
    """Uniform labelled tree on n vertices from a random Pruefer sequence."""
    if n < 1:
        raise InfeasibleSpec("a tree needs at least one vertex")
    if n == 1:
        return build_graph(1, [])
    rng = SplitMix64(seed)
    return prufer_to_tree([rng.below(n) for _ in range(n - 2)], n)


def prufer_to_tree(seq, n: int) -> Graph:
    import heapq

    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return build_graph(n, edges)


def random_3partition_instance(n_triples: int, seed: int, retries: int = 1000):
    """Solvable instance ``(X, S)`` together with its witness triples."""
    from .reduction import ThreePartitionInstance, validate_instance

    if n_triples < 1:
        raise InfeasibleSpec("need at least one triple")
    rng = SplitMix64(seed)
    # (S/4, S/2) holds about S/4 integers and 3n of them must be distinct;
    # S up to 36n leaves enough slack for greedy drawing
    base = max(15, 12 * n_triples + 3)
    for _ in range(retries):
        # a fresh target per round; some small S admit no disjoint triples at all
        S = rng.between(base, 3 * base)
        lo, hi = S // 4 + 1, (S - 1) // 2
        used, triples = set(), []
        for _ in range(50 * n_triples):
            a, b = rng.between(lo, hi), rng.between(lo, hi)
            c = S - a - b
            t = {a, b, c}
            if len(t) == 3 and lo <= c <= hi and not t & used:
                used |= t
                triples.append(tuple(sorted(t, reverse=True)))
                if len(triples) == n_triples:
                    break
        if len(triples) == n_triples:
            break
    else:
        raise GenerationFailed(f"could not build {n_triples} triples in {retries} rounds")
    X = sorted(used)
    inst = validate_instance(X, S)
    assert isinstance(inst, ThreePartitionInstance)
    return inst, triples


def random_leafy_tree(seed: int, core_n: int | None = None, levels: int | None = None) -> Graph:
    """Tree that stays leafy under repeated leaf stripping down to a 2-caterpillar.

    Starting from a random 2-caterpillar core, each level hangs a new leaf on
    every current leaf (so stripping undoes exactly that level) plus extra
    leaves until the count reaches ``2*ceil(sqrt(n)) - 1``.
    """
    rng = SplitMix64(seed)
    if core_n is None:
        core_n = rng.between(5, 60)
    if levels is None:
        levels = rng.between(1, 3)
    g = random_p_caterpillar(core_n, 2, rng.next_u64())
    for _ in range(levels):
        n = g.n
        old_leaves = [v for v in range(n) if g.degree(v) <= 1]
        q = len(old_leaves)
        q += rng.below(q + 1)
        # top up after the random extras, since every new leaf also raises n
        while q < 2 * sqrt_ceil(n + q) - 1:
            q += 1
        edges = list(g.edge_list())
        nxt = n
        for v in old_leaves:
            edges.append((v, nxt))
            nxt += 1
        while nxt < n + q:
            edges.append((rng.below(n), nxt))
            nxt += 1
        g = build_graph(nxt, edges)
    return g


def generate(spec: GenSpec):
    """Graph (or instance and witness) described by ``spec``."""
    if spec.kind == "caterpillar":
        rng = SplitMix64(spec.seed)
        l = spec.l if spec.l is not None else rng.between(min(3, spec.n), spec.n)
        return random_caterpillar(spec.n, l, spec.seed)
    if spec.kind == "p_caterpillar":
        return random_p_caterpillar(spec.n, spec.p or 1, spec.seed, spec.l)
    if spec.kind == "tree":
        return random_tree(spec.n, spec.seed)
    if spec.kind == "leafy":
        return random_leafy_tree(spec.seed, spec.n)
    if spec.kind == "three_partition":
        return random_3partition_instance(spec.n_triples or 1, spec.seed)
    raise InfeasibleSpec(f"unknown generator kind {spec.kind!r}")


def sidecar_text(spec: GenSpec, g: Graph) -> str:
    meta = spec.to_json()
    meta["vertices"] = g.n
    meta["leaves"] = count_leaves(g)
    return json.dumps(meta, indent=2, sort_keys=True) + "\n"


__all__ = [
    "GenSpec",
    "SplitMix64",
    "format_graph",
    "generate",
    "prufer_to_tree",
    "random_3partition_instance",
    "random_caterpillar",
    "random_leafy_tree",
    "random_p_caterpillar",
    "random_tree",
    "sidecar_text",
]
