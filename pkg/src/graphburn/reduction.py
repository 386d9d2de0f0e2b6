"""Distinct 3-Partition to graph burning, and back.

An instance ``(X, S)`` with ``m = max X`` becomes a caterpillar whose spine has
order ``(2m+1)**2``. It is a chain of components joined end to end:

* ``n`` paths of order ``2S-3``, one per triple;
* one path of order ``2y-1`` for every ``y`` in ``1..m`` that is not in ``X``;
* caterpillars ``G_1..G_{m+1}``, where ``G_i`` has spine order
  ``2(2m+1-i)+1`` and one leaf on every internal spine vertex.

Paths and caterpillars alternate, so no two paths touch. Any burning in
``2m+1`` steps must spend radii ``m..2m`` on the caterpillars and cut every
triple path into three pieces of orders ``2a-1``, which spells out the
partition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import BurningSchedule, verify_sequence
from .errors import (
    BadCardinality,
    InvalidInstance,
    NotDistinct,
    NotOptimalSchedule,
    PartitionInvalid,
    RangeViolation,
    StructureViolation,
    SumMismatch,
)
from .graph import Graph, ball, build_graph

Q_TRIPLE = "QX"
Q_FILL = "QY"
CATERPILLAR = "G"


@dataclass(frozen=True)
class ThreePartitionInstance:
    X: tuple
    S: int

    @property
    def n_triples(self) -> int:
        return len(self.X) // 3

    @property
    def m_max(self) -> int:
        return max(self.X)

    def to_json(self) -> dict:
        return {"X": list(self.X), "S": self.S}

    @classmethod
    def from_json(cls, obj: dict) -> "ThreePartitionInstance":
        return validate_instance(obj["X"], obj["S"])


def validate_instance(X, S) -> ThreePartitionInstance:
    values = [int(a) for a in X]
    S = int(S)
    if not values or len(values) % 3:
        raise BadCardinality(f"|X| = {len(values)} is not a positive multiple of 3")
    if len(set(values)) != len(values):
        dup = sorted({a for a in values if values.count(a) > 1})
        raise NotDistinct(f"repeated elements {dup}")
    n = len(values) // 3
    if sum(values) != n * S:
        raise SumMismatch(f"sum {sum(values)} != {n} * {S}")
    bad = [a for a in values if not (4 * a > S and 2 * a < S)]
    if bad:
        raise RangeViolation(f"elements {sorted(bad)} not strictly between S/4 and S/2")
    return ThreePartitionInstance(tuple(sorted(values)), S)


@dataclass(frozen=True)
class Component:
    kind: str
    index: int  # 1-based within its kind
    first: int  # vertex id range first..last inclusive
    last: int
    spine: tuple  # vertex ids in spine order
    center: int

    @property
    def order(self) -> int:
        return self.last - self.first + 1

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "index": self.index,
            "first": self.first,
            "last": self.last,
            "spine_order": len(self.spine),
            "spine": list(self.spine),
            "center": self.center,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Component":
        return cls(obj["kind"], obj["index"], obj["first"], obj["last"], tuple(obj["spine"]), obj["center"])


@dataclass(frozen=True)
class ReductionLayout:
    instance: ThreePartitionInstance
    X_prime: tuple
    Y: tuple
    Y_prime: tuple
    O_m: tuple
    S_prime: int
    components: tuple  # in chain order
    connectors: tuple = field(default=())

    @property
    def n_vertices(self) -> int:
        return max(c.last for c in self.components) + 1

    def of_kind(self, kind: str) -> list:
        return sorted((c for c in self.components if c.kind == kind), key=lambda c: c.index)

    def component_of(self, v: int) -> Component:
        for c in self.components:
            if c.first <= v <= c.last:
                return c
        raise IndexError(f"vertex {v} outside the layout")

    def to_json(self) -> dict:
        return {
            "instance": self.instance.to_json(),
            "X_prime": list(self.X_prime),
            "Y": list(self.Y),
            "Y_prime": list(self.Y_prime),
            "O_m": list(self.O_m),
            "S_prime": self.S_prime,
            "n_vertices": self.n_vertices,
            "components": [c.to_json() for c in self.components],
            "connectors": [list(e) for e in self.connectors],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ReductionLayout":
        return cls(
            instance=ThreePartitionInstance.from_json(obj["instance"]),
            X_prime=tuple(obj["X_prime"]),
            Y=tuple(obj["Y"]),
            Y_prime=tuple(obj["Y_prime"]),
            O_m=tuple(obj["O_m"]),
            S_prime=obj["S_prime"],
            components=tuple(Component.from_json(c) for c in obj["components"]),
            connectors=tuple(tuple(e) for e in obj["connectors"]),
        )


def _chain_order(n_paths: int, m: int):
    """Paths and caterpillars alternate; leftover caterpillars go last."""
    cats = list(range(m + 1, 0, -1))  # G_{m+1} has the shortest spine
    order = []
    for j in range(n_paths):
        order.append(("Q", j))
        if cats:
            order.append((CATERPILLAR, cats.pop(0)))
    order.extend((CATERPILLAR, i) for i in cats)
    return order


def reduce_to_burning(inst: ThreePartitionInstance):
    """Build the reduced caterpillar and its layout."""
    if not isinstance(inst, ThreePartitionInstance):
        raise InvalidInstance("reduce_to_burning needs a validated instance")
    inst = validate_instance(inst.X, inst.S)
    m = inst.m_max
    n = inst.n_triples
    Y = tuple(y for y in range(1, m + 1) if y not in set(inst.X))
    paths = [(Q_TRIPLE, j + 1, 2 * inst.S - 3) for j in range(n)]
    paths += [(Q_FILL, j + 1, 2 * y - 1) for j, y in enumerate(Y)]

    edges = []
    components = []
    connectors = []
    nxt = 0
    for kind, key in _chain_order(len(paths), m):
        first = nxt
        if kind == "Q":
            kind, index, order = paths[key]
            spine = tuple(range(first, first + order))
            edges.extend((v, v + 1) for v in spine[:-1])
            nxt += order
        else:
            index = key
            s = 2 * (2 * m + 1 - index) + 1
            spine = tuple(range(first, first + s))
            edges.extend((v, v + 1) for v in spine[:-1])
            nxt += s
            for v in spine[1:-1]:
                edges.append((v, nxt))
                nxt += 1
        if components:
            link = (components[-1].spine[-1], spine[0])
            connectors.append(link)
            edges.append(link)
        components.append(Component(kind, index, first, nxt - 1, spine, spine[len(spine) // 2]))

    g = build_graph(nxt, edges)
    layout = ReductionLayout(
        instance=inst,
        X_prime=tuple(2 * a - 1 for a in inst.X),
        Y=Y,
        Y_prime=tuple(2 * y - 1 for y in Y),
        O_m=tuple(2 * i - 1 for i in range(1, m + 1)),
        S_prime=2 * inst.S - 3,
        components=tuple(components),
        connectors=tuple(connectors),
    )
    return g, layout


def verify_partition(inst: ThreePartitionInstance, partition) -> bool:
    try:
        triples = [tuple(int(a) for a in t) for t in partition]
    except (TypeError, ValueError):
        return False
    if len(triples) != inst.n_triples or any(len(t) != 3 for t in triples):
        return False
    if sorted(a for t in triples for a in t) != sorted(inst.X):
        return False
    return all(sum(t) == inst.S for t in triples)


def solution_to_schedule(inst: ThreePartitionInstance, layout: ReductionLayout, partition) -> BurningSchedule:
    """Optimal ``2m+1``-step schedule built from a known partition."""
    if not verify_partition(inst, partition):
        raise PartitionInvalid(f"not a valid 3-partition of {list(inst.X)} with sum {inst.S}")
    m = inst.m_max
    top = 2 * m + 1
    ignitions = []
    for c in layout.of_kind(CATERPILLAR):
        ignitions.append((c.index, c.center))
    # a segment of order 2r+1 is lit at its centre at step top - r
    triples = [sorted(t, reverse=True) for t in partition]
    for c, triple in zip(layout.of_kind(Q_TRIPLE), triples):
        start = 0
        for a in triple:
            r = a - 1
            ignitions.append((top - r, c.spine[start + r]))
            start += 2 * r + 1
    for c, y in zip(layout.of_kind(Q_FILL), layout.Y):
        ignitions.append((top - (y - 1), c.center))
    return BurningSchedule(top, tuple(ignitions))


def extract_partition(inst: ThreePartitionInstance, layout: ReductionLayout, schedule: BurningSchedule, graph: Graph | None = None):
    """Read the triples off an optimal schedule of the reduced graph."""
    m = inst.m_max
    top = 2 * m + 1
    if schedule.horizon != top:
        raise NotOptimalSchedule(f"horizon {schedule.horizon} != 2m+1 = {top}")
    g = graph if graph is not None else reduce_to_burning(inst)[0]

    owner = {}
    for step, x in schedule.ignitions:
        if not 0 <= x < g.n:
            raise NotOptimalSchedule(f"vertex {x} outside the reduced graph")
        home = layout.component_of(x)
        for v in ball(g, x, top - step):
            if v in owner:
                raise StructureViolation(f"vertex {v} lies in two burning circles")
            if not home.first <= v <= home.last:
                raise StructureViolation(f"circle of step {step} leaves component {home.kind}{home.index}")
            owner[v] = (step, home)

    for c in layout.of_kind(CATERPILLAR):
        steps = {owner[v][0] for v in range(c.first, c.last + 1) if v in owner}
        if len(steps) > 1:
            raise StructureViolation(f"caterpillar G{c.index} is burned by {len(steps)} circles")

    verdict = verify_sequence(g, schedule)
    if not verdict:
        raise NotOptimalSchedule(f"schedule does not burn the graph: {verdict.reason}")

    partition = []
    for c in layout.of_kind(Q_TRIPLE):
        steps = sorted({s for s, home in owner.values() if home == c})
        triple = tuple(sorted((top - s + 1 for s in steps), reverse=True))
        if len(triple) != 3 or sum(triple) != inst.S:
            raise StructureViolation(f"path QX{c.index} is not cut into a triple summing to {inst.S}")
        partition.append(triple)
    if not verify_partition(inst, partition):
        raise StructureViolation("extracted triples do not form a partition")
    return partition
