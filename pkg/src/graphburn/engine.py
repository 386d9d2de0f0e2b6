"""Burning process simulation and certificate checking.

Two certificate forms are supported. A schedule lights at most one vertex
per step ``1..m``; a covering is a set of balls with pairwise distinct radii.
The ball of the step-``i`` ignition has radius ``m - i``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import CoveringInvalid
from .graph import UNREACHABLE, Graph, ball, distances_from, longest_path_in_tree

NEVER = None  # burn_time entry for a vertex that is still unburned at the horizon


class Circle(NamedTuple):
    center: int
    radius: int


@dataclass(frozen=True)
class BurningSchedule:
    horizon: int
    ignitions: tuple  # ((step, vertex), ...) sorted by step

    def __post_init__(self):
        steps = [s for s, _ in self.ignitions]
        verts = [v for _, v in self.ignitions]
        if self.horizon < 0:
            raise ValueError("negative horizon")
        if any(not 1 <= s <= self.horizon for s in steps):
            raise ValueError(f"ignition step outside 1..{self.horizon}")
        if len(set(steps)) != len(steps):
            raise ValueError("two ignitions share a step")
        if len(set(verts)) != len(verts):
            raise ValueError("a vertex is ignited twice")
        object.__setattr__(self, "ignitions", tuple(sorted((int(s), int(v)) for s, v in self.ignitions)))

    @classmethod
    def from_map(cls, horizon: int, ignitions: dict) -> "BurningSchedule":
        return cls(horizon, tuple(ignitions.items()))

    def as_map(self) -> dict:
        return dict(self.ignitions)

    def extended(self, horizon: int) -> "BurningSchedule":
        return BurningSchedule(horizon, self.ignitions)

    def to_json(self) -> dict:
        return {
            "horizon": self.horizon,
            "ignitions": [{"step": s, "vertex": v} for s, v in self.ignitions],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BurningSchedule":
        return cls(int(obj["horizon"]), tuple((int(e["step"]), int(e["vertex"])) for e in obj["ignitions"]))


@dataclass(frozen=True)
class CoveringCertificate:
    circles: tuple

    def __post_init__(self):
        object.__setattr__(self, "circles", tuple(Circle(int(c), int(r)) for c, r in self.circles))

    @property
    def horizon(self) -> int:
        return 1 + max((c.radius for c in self.circles), default=-1)

    def to_json(self) -> dict:
        return {"circles": [{"center": c.center, "radius": c.radius} for c in self.circles]}

    @classmethod
    def from_json(cls, obj: dict) -> "CoveringCertificate":
        return cls(tuple((int(e["center"]), int(e["radius"])) for e in obj["circles"]))


@dataclass(frozen=True)
class BurnTrace:
    burn_time: tuple
    horizon: int

    @property
    def all_burned(self) -> bool:
        return all(t is not NEVER for t in self.burn_time)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = "valid"
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"valid": self.ok, "reason": self.reason, **self.details}


def sqrt_ceil(n: int) -> int:
    """Smallest k with k*k >= n, in integer arithmetic."""
    if n <= 0:
        return 0
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def simulate(g: Graph, s: BurningSchedule) -> BurnTrace:
    """Run the process step by step: spread first, then light."""
    for _, v in s.ignitions:
        g.check_vertex(v)
    lit = s.as_map()
    burn = [NEVER] * g.n
    frontier = []
    for t in range(1, s.horizon + 1):
        nxt = []
        for u in frontier:
            for w in g.adj[u]:
                if burn[w] is NEVER:
                    burn[w] = t
                    nxt.append(w)
        x = lit.get(t)
        if x is not None and burn[x] is NEVER:
            burn[x] = t
            nxt.append(x)
        frontier = nxt
    return BurnTrace(tuple(burn), s.horizon)


def burn_times_closed_form(g: Graph, s: BurningSchedule) -> list:
    """burn_time(v) = min over ignitions (i, x) of i + d(x, v), capped at the horizon."""
    best = [math.inf] * g.n
    for step, x in s.ignitions:
        for v, d in enumerate(distances_from(g, x)):
            if d is not UNREACHABLE and step + d < best[v]:
                best[v] = step + d
    return [t if t <= s.horizon else NEVER for t in best]


def verify_sequence(g: Graph, s: BurningSchedule) -> Verdict:
    """Check that every ignition hits an unburned vertex and all burn by the horizon."""
    for step, x in s.ignitions:
        if not 0 <= x < g.n:
            return Verdict(False, "vertex out of range", {"step": step, "vertex": x})
    dist = {x: distances_from(g, x) for _, x in s.ignitions}
    ign = s.ignitions
    for a in range(len(ign)):
        i, xi = ign[a]
        row = dist[xi]
        for b in range(a):
            j, xj = ign[b]
            d = row[xj]
            # x_i is already on fire at step i when the step-j fire reached it
            if d is not UNREACHABLE and d <= i - j:
                return Verdict(
                    False,
                    "ignition of a burning vertex",
                    {"step": i, "vertex": xi, "earlier_step": j, "earlier_vertex": xj, "distance": d},
                )
    best = [math.inf] * g.n
    for step, x in ign:
        for v, d in enumerate(dist[x]):
            if d is not UNREACHABLE and step + d < best[v]:
                best[v] = step + d
    unburned = [v for v in range(g.n) if best[v] > s.horizon]
    if unburned:
        return Verdict(False, "unburned at horizon", {"unburned": unburned[:50], "count": len(unburned)})
    return Verdict(True)


def covered_set(g: Graph, c: CoveringCertificate) -> set:
    out = set()
    for center, radius in c.circles:
        out |= ball(g, center, radius)
    return out


def verify_covering(g: Graph, c: CoveringCertificate) -> Verdict:
    radii = [r for _, r in c.circles]
    for center, radius in c.circles:
        if not 0 <= center < g.n:
            return Verdict(False, "center out of range", {"center": center})
        if radius < 0:
            return Verdict(False, "negative radius", {"radius": radius})
    if len(set(radii)) != len(radii):
        dup = sorted({r for r in radii if radii.count(r) > 1})
        return Verdict(False, "repeated radius", {"radii": dup})
    covered = covered_set(g, c)
    uncovered = [v for v in range(g.n) if v not in covered]
    if uncovered:
        return Verdict(False, "uncovered vertices", {"uncovered": uncovered[:50], "count": len(uncovered)})
    return Verdict(True)


def covering_to_sequence(g: Graph, c: CoveringCertificate) -> BurningSchedule:
    """Turn a valid covering into a valid schedule with horizon 1 + max radius.

    Circles are lit by decreasing radius, radius ``r`` at step ``m - r``. A
    circle whose centre is already burning when its step comes lies inside
    an earlier ball, so it is moved to an uncovered vertex if one exists and
    otherwise dropped.
    """
    verdict = verify_covering(g, c)
    if not verdict:
        raise CoveringInvalid(f"covering rejected: {verdict.reason}")
    m = c.horizon
    order = sorted(c.circles, key=lambda cr: (-cr.radius, cr.center))
    balls = [ball(g, cr.center, cr.radius) for cr in order]
    kept = []  # (step, vertex, distances)

    def admissible(step, v):
        for j, _, dv in kept:
            if dv[v] is not UNREACHABLE and dv[v] <= step - j:
                return False
        return True

    for idx, (center, radius) in enumerate(order):
        step = m - radius
        if admissible(step, center):
            kept.append((step, center, distances_from(g, center)))
            continue
        others = set()
        for jdx, b in enumerate(balls):
            if jdx != idx:
                others |= b
        alt = next((v for v in range(g.n) if v not in others and admissible(step, v)), None)
        if alt is not None:
            kept.append((step, alt, distances_from(g, alt)))
    return BurningSchedule(m, tuple((s, v) for s, v, _ in kept))


def longest_path_lower_bound(g: Graph) -> int:
    """ceil(sqrt(l)) for the longest path order l of a tree.

    A ball of radius r meets a path in at most 2r + 1 consecutive vertices,
    so no horizon below this value can burn the tree.
    """
    return sqrt_ceil(longest_path_in_tree(g).order)


def load_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
