"""Exact burning number by iterative deepening over the covering form.

For a fixed horizon ``m`` the search looks for balls with distinct radii in
``0..m-1`` whose union is the whole vertex set. Vertex sets are Python int
bitmasks. Branching always targets the lowest-id uncovered vertex, radii are
tried largest first and centres by increasing id, so results are
deterministic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .engine import (
    BurningSchedule,
    CoveringCertificate,
    covering_to_sequence,
    sqrt_ceil,
    verify_covering,
    verify_sequence,
)
from .errors import BudgetExceeded, Disconnected, StrategyInternalError
from .graph import UNREACHABLE, Graph, distances_from, is_tree, longest_path_in_tree, tree_path

DEFAULT_NODE_BUDGET = 10**7
DEFAULT_TIME_BUDGET_S = 60.0


@dataclass(frozen=True)
class SolverLimits:
    node_budget: int = DEFAULT_NODE_BUDGET
    time_budget_s: float = DEFAULT_TIME_BUDGET_S
    max_steps: int | None = None


@dataclass
class SolveResult:
    burning_number: int
    certificate: CoveringCertificate
    schedule: BurningSchedule
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "burning_number": self.burning_number,
            "certificate": self.certificate.to_json(),
            "schedule": self.schedule.to_json(),
            "stats": dict(self.stats),
        }


class _Search:
    def __init__(self, g: Graph, limits: SolverLimits, started: float):
        self.g = g
        self.n = g.n
        self.full = (1 << g.n) - 1
        self.limits = limits
        self.started = started
        self.nodes = 0
        self.dist = [distances_from(g, v) for v in range(g.n)]
        ecc = max(
            (d for row in self.dist for d in row if d is not UNREACHABLE),
            default=0,
        )
        self.max_radius = ecc
        # balls[r][c] for r up to the eccentricity bound; larger radii equal the component
        self.balls = []
        for r in range(ecc + 1):
            row = []
            for c in range(g.n):
                mask = 0
                for v, d in enumerate(self.dist[c]):
                    if d is not UNREACHABLE and d <= r:
                        mask |= 1 << v
                row.append(mask)
            self.balls.append(row)
        self.ball_cap = [max(m.bit_count() for m in row) for row in self.balls]
        self.path_mask, self.path_len = self._projection_path()

    def _projection_path(self):
        g = self.g
        if g.n == 0:
            return 0, 0
        if is_tree(g):
            verts = longest_path_in_tree(g).vertices
        else:
            # a geodesic meets any ball in at most 2r + 1 vertices, same as a tree path
            a = max(range(g.n), key=lambda v: (self.dist[0][v], -v))
            b = max(range(g.n), key=lambda v: (self.dist[a][v], -v))
            verts = tree_path(g, b, a)
        mask = 0
        for v in verts:
            mask |= 1 << v
        return mask, len(verts)

    def ball(self, c: int, r: int) -> int:
        return self.balls[min(r, self.max_radius)][c]

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.limits.node_budget:
            raise _OutOfBudget("node budget exhausted")
        if self.nodes & 1023 == 0 and time.perf_counter() - self.started > self.limits.time_budget_s:
            raise _OutOfBudget("time budget exhausted")

    def cover(self, m: int):
        """Circles (center, radius) covering everything within horizon m, or None."""
        self.failed = set()
        radii = tuple(range(m - 1, -1, -1))
        return self._dfs(0, radii)

    def _dfs(self, covered: int, radii: tuple):
        if covered == self.full:
            return []
        self._tick()
        key = (covered, radii)
        if key in self.failed:
            return None
        uncovered = self.full & ~covered
        cap_path = sum(min(2 * r + 1, self.path_len) for r in radii)
        if (uncovered & self.path_mask).bit_count() > cap_path:
            self.failed.add(key)
            return None
        cap = sum(self.ball_cap[min(r, self.max_radius)] for r in radii)
        if uncovered.bit_count() > cap:
            self.failed.add(key)
            return None

        u = (uncovered & -uncovered).bit_length() - 1
        du = self.dist[u]
        for idx, r in enumerate(radii):
            rest = radii[:idx] + radii[idx + 1:]
            cands = []
            for c in range(self.n):
                d = du[c]
                if d is not UNREACHABLE and d <= r:
                    cands.append((c, self.ball(c, r) & uncovered))
            for c, gain in _undominated(cands):
                sub = self._dfs(covered | gain, rest)
                if sub is not None:
                    return [(c, r)] + sub
        self.failed.add(key)
        return None


def _undominated(cands):
    """Drop candidates whose newly covered set is contained in another's.

    Among candidates with equal gain only the lowest id survives.
    """
    out = []
    for i, (c, gain) in enumerate(cands):
        dominated = False
        for j, (c2, gain2) in enumerate(cands):
            if i == j or gain | gain2 != gain2:
                continue
            if gain != gain2 or j < i:
                dominated = True
                break
        if not dominated:
            out.append((c, gain))
    return out


class _OutOfBudget(Exception):
    pass


def burnable_within(g: Graph, m: int, limits: SolverLimits | None = None):
    """Covering certificate with radii in ``0..m-1``, or ``None`` if none exists."""
    if g.n and not _connected(g):
        raise Disconnected("burnable_within needs a connected graph")
    if m < 1:
        return None if g.n else CoveringCertificate(())
    limits = limits or SolverLimits()
    search = _Search(g, limits, time.perf_counter())
    try:
        circles = search.cover(m)
    except _OutOfBudget as exc:
        raise BudgetExceeded(str(exc), lower_bound=m, nodes=search.nodes) from None
    return None if circles is None else CoveringCertificate(tuple(circles))


def _connected(g: Graph) -> bool:
    return all(d is not UNREACHABLE for d in distances_from(g, 0))


def _upper_hint(g: Graph):
    if not is_tree(g):
        return None
    from .recognition import spine_decompose

    d = spine_decompose(g)
    return sqrt_ceil(d.l) + d.p


def burning_number_exact(g: Graph, limits: SolverLimits | None = None) -> SolveResult:
    """Smallest horizon that burns ``g``, with a covering and a schedule."""
    limits = limits or SolverLimits()
    if g.n == 0:
        raise ValueError("empty graph has no burning number")
    if not _connected(g):
        raise Disconnected("burning_number_exact needs a connected graph")
    started = time.perf_counter()
    lower = sqrt_ceil(longest_path_in_tree(g).order) if is_tree(g) else 1
    search = _Search(g, limits, started)
    m = lower
    while True:
        if limits.max_steps is not None and m > limits.max_steps:
            raise BudgetExceeded(
                f"no burning within max_steps={limits.max_steps}",
                lower_bound=m,
                upper_bound=_upper_hint(g),
                nodes=search.nodes,
            )
        try:
            circles = search.cover(m)
        except _OutOfBudget as exc:
            raise BudgetExceeded(str(exc), lower_bound=m, upper_bound=_upper_hint(g), nodes=search.nodes) from None
        if circles is not None:
            break
        m += 1
    cert = CoveringCertificate(tuple(circles))
    schedule = covering_to_sequence(g, cert).extended(m)
    if not verify_covering(g, cert) or not verify_sequence(g, schedule):
        raise StrategyInternalError("exact solver produced an invalid certificate")
    stats = {
        "nodes": search.nodes,
        "elapsed_s": round(time.perf_counter() - started, 6),
        "lower_bound": lower,
    }
    return SolveResult(m, cert, schedule, stats)
