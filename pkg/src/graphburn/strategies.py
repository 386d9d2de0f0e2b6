"""Constructive burning strategies with the ceil(sqrt(n)) guarantee.

Every strategy emits balls ``(center, radius)`` with distinct radii and turns
them into a schedule through the engine; nothing leaves this module without
passing ``verify_covering`` and ``verify_sequence``.

The recursive strategies (caterpillars, 2-caterpillars) work on a shrinking
remnant: a spine interval of the input tree together with everything hanging
off it. Each round has a budget ``k = ceil(sqrt(n_remaining))``, chooses one
of the case rules, emits the largest circles ``k-1, k-2, ...`` over a prefix
(and in one case also a suffix) of the spine, and deletes the covered part.
The chosen removal always leaves at most ``(k - t)**2`` vertices when ``t``
circles were used, which keeps the radii strictly decreasing.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations

from .engine import (
    Circle,
    CoveringCertificate,
    BurningSchedule,
    covering_to_sequence,
    sqrt_ceil,
    verify_covering,
    verify_sequence,
)
from .errors import (
    BudgetExceeded,
    NotA2Caterpillar,
    NotACaterpillar,
    NotAPath,
    NotATree,
    StrategyInternalError,
    Unsupported,
)
from .exact import SolverLimits, burning_number_exact
from .graph import Graph, ball, induced_subgraph, is_tree
from .recognition import PATH, SpineDecomposition, classify, count_leaves, spine_decompose

PROVEN = "proven class"
UNPROVEN = "unproven class"

METHODS = ("auto", "path", "caterpillar", "2cat", "leafy", "spine-p")

# remnants this small go to the exact solver inside the 2-caterpillar recursion
SMALL_N = 9


@dataclass(frozen=True)
class LogEntry:
    case: str
    removed: int
    circles: tuple

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "removed": self.removed,
            "circles": [{"center": c, "radius": r} for c, r in self.circles],
        }


@dataclass
class StrategyOutcome:
    certificate: CoveringCertificate
    schedule: BurningSchedule
    steps_used: int
    bound_claimed: int
    method: str
    reduction_log: list = field(default_factory=list)
    status: str = PROVEN
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "steps_used": self.steps_used,
            "bound_claimed": self.bound_claimed,
            "conjecture_status": self.status,
            "certificate": self.certificate.to_json(),
            "schedule": self.schedule.to_json(),
            "reduction_log": [e.to_json() for e in self.reduction_log],
            "notes": list(self.notes),
        }


def _finish(g: Graph, circles, method, bound, log, status=PROVEN, notes=()) -> StrategyOutcome:
    cert = CoveringCertificate(tuple(sorted(circles, key=lambda c: (-c[1], c[0]))))
    verdict = verify_covering(g, cert)
    if not verdict:
        raise StrategyInternalError(f"{method}: covering rejected ({verdict.reason}, {verdict.details})")
    schedule = covering_to_sequence(g, cert)
    verdict = verify_sequence(g, schedule)
    if not verdict:
        raise StrategyInternalError(f"{method}: schedule rejected ({verdict.reason})")
    if schedule.horizon > bound:
        raise StrategyInternalError(f"{method}: {schedule.horizon} steps exceed the bound {bound}")
    return StrategyOutcome(cert, schedule, schedule.horizon, bound, method, list(log), status, list(notes))


# -- paths and the spine + p fallback ---------------------------------------

def _tile_spine(spine, budget: int, extra: int):
    """Chunks of sizes 2(budget - i) + 1 from the left, one circle per chunk."""
    circles = []
    start = 0
    for i in range(1, budget + 1):
        if start >= len(spine):
            break
        half = budget - i
        center = min(start + half, len(spine) - 1)
        circles.append(Circle(spine[center], half + extra))
        start += 2 * half + 1
    return circles


def path_strategy(g: Graph, decomposition: SpineDecomposition | None = None) -> StrategyOutcome:
    d = decomposition or spine_decompose(g)
    if d.p != 0:
        raise NotAPath("path_strategy needs a path")
    m = sqrt_ceil(g.n)
    circles = _tile_spine(d.spine.vertices, m, 0)
    log = [LogEntry("path-tiling", g.n, tuple(circles))]
    return _finish(g, circles, "path", m, log)


def spine_plus_p_strategy(d: SpineDecomposition) -> StrategyOutcome:
    """Tile the spine as a path and widen every circle by p to swallow the legs."""
    budget = sqrt_ceil(d.l)
    bound = budget + d.p
    circles = _tile_spine(d.spine.vertices, budget, d.p)
    log = [LogEntry("spine-tiling", d.n, tuple(circles))]
    status = PROVEN if d.p <= 2 or bound <= sqrt_ceil(d.n) else UNPROVEN
    return _finish(d.graph, circles, "spine-p", bound, log, status)


# -- remnant bookkeeping ------------------------------------------------------

class _Remnant:
    """A spine interval of the input tree plus everything hanging off it."""

    def __init__(self, g: Graph, spine):
        self.g = g
        self.alive = set(range(g.n))
        self.spine = list(spine)
        self._profile()

    def __len__(self):
        return len(self.alive)

    def _profile(self):
        on_spine = set(self.spine)
        self.hanging = []
        self.lm = []
        self.ls = []
        seen = set(on_spine)
        for s in self.spine:
            members = []
            depth = 0
            frontier = [s]
            while frontier:
                nxt = []
                for u in frontier:
                    for w in self.g.adj[u]:
                        if w in self.alive and w not in seen:
                            seen.add(w)
                            nxt.append(w)
                if nxt:
                    depth += 1
                    members.extend(nxt)
                frontier = nxt
            self.hanging.append(members)
            self.lm.append(depth)
            self.ls.append(len(members))

    def lmax(self, i: int) -> int:
        """1-based leg depth; positions past either end count as legless."""
        return self.lm[i - 1] if 1 <= i <= len(self.spine) else 0

    def lsum(self, i: int, j: int | None = None) -> int:
        if j is None:
            j = i
        lo, hi = max(i, 1), min(j, len(self.spine))
        return sum(self.ls[lo - 1:hi]) if lo <= hi else 0

    def reversed_view(self) -> "_View":
        return _View(self.lm[::-1], self.ls[::-1])

    def front_view(self) -> "_View":
        return _View(self.lm, self.ls)

    def members(self, positions) -> set:
        out = set()
        for p in positions:
            out.add(self.spine[p])
            out.update(self.hanging[p])
        return out

    def remove(self, positions) -> set:
        gone = self.members(positions)
        self.alive -= gone
        keep = [i for i in range(len(self.spine)) if i not in set(positions)]
        self.spine = [self.spine[i] for i in keep]
        if self.alive:
            self._recanonicalize()
        else:
            self.spine = []
        self._profile()
        return gone

    def _farthest(self, source, prefer):
        dist = {source: 0}
        parent = {source: None}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.g.adj[u]:
                if w in self.alive and w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
        far = max(dist.values())
        if dist.get(prefer) == far:
            return prefer, parent
        return min(v for v, dv in dist.items() if dv == far), parent

    def _recanonicalize(self):
        # Double sweep from the far end; ties keep the current endpoints, so an
        # untouched end stays put and the spine remains a longest path.
        z = self.spine[-1] if self.spine else min(self.alive)
        front = self.spine[0] if self.spine else z
        a, _ = self._farthest(z, front)
        b, parent = self._farthest(a, z)
        path = [b]
        while path[-1] != a:
            path.append(parent[path[-1]])
        self.spine = path[::-1]


@dataclass
class _View:
    """Leg statistics seen from one end of the spine, 1-based."""

    lm: list
    ls: list

    def lmax(self, i):
        return self.lm[i - 1] if 1 <= i <= len(self.lm) else 0

    def lsum(self, i, j=None):
        if j is None:
            j = i
        lo, hi = max(i, 1), min(j, len(self.ls))
        return sum(self.ls[lo - 1:hi]) if lo <= hi else 0


def _audit(g: Graph, circles, removed: set, label: str):
    covered = set()
    for c, r in circles:
        covered |= ball(g, c, r)
    missing = removed - covered
    if missing:
        raise StrategyInternalError(f"case {label}: removed vertices {sorted(missing)[:10]} not covered")


def _check_budget(n_left: int, floor_radius: int, label: str):
    # the next round uses radii < floor_radius, which needs n_left <= floor_radius**2
    if n_left > floor_radius * floor_radius:
        raise StrategyInternalError(
            f"case {label}: {n_left} vertices left but only radii below {floor_radius} remain"
        )


# -- caterpillars -------------------------------------------------------------

def caterpillar_strategy(d: SpineDecomposition) -> StrategyOutcome:
    """Recursive removal of the largest circles for caterpillars (p <= 1)."""
    if d.p > 1:
        raise NotACaterpillar(f"caterpillar_strategy needs p <= 1 (got p = {d.p})")
    g = d.graph
    top = sqrt_ceil(g.n)
    rem = _Remnant(g, d.spine.vertices)
    circles, log = [], []
    floor_radius = top
    while len(rem):
        k = sqrt_ceil(len(rem))
        L = len(rem.spine)
        pos = rem.spine  # 0-based storage, 1-based case arithmetic below
        if rem.lsum(2 * k - 1) == 0:
            label = "case1"
            step = [Circle(pos[min(k, L) - 1], k - 1)]
            cut = range(min(2 * k - 1, L))
        elif rem.lsum(1, 2 * k - 2) > 0:
            label = "case2a"
            step = [Circle(pos[k - 1], k - 1)]
            cut = range(2 * k - 2)
        else:
            label = "case2b"
            step = [Circle(pos[k - 2], k - 2), Circle(pos[min(3 * k - 3, L) - 1], k - 1)]
            cut = range(min(4 * k - 5, L))
        removed = rem.members(cut)
        _audit(g, step, removed, label)
        rem.remove(list(cut))
        floor_radius = min(c.radius for c in step)
        _check_budget(len(rem), floor_radius, label)
        circles.extend(step)
        log.append(LogEntry(label, len(removed), tuple(step)))
    return _finish(g, circles, "caterpillar", top, log)


# -- 2-caterpillars -----------------------------------------------------------

def _front_case(v: _View, k: int):
    """Classify the spine front; returns (label, radii) or ("b", None)."""
    heavy = v.lmax(2 * k - 2) == 2 or v.lmax(2 * k - 1) >= 1
    if not heavy:
        return "prefix-2k-1", [k - 1]
    head = v.lsum(1, 2 * k - 3)
    if head >= 2:
        return "prefix-2k-3", [k - 1]
    if v.lmax(2 * k - 2) <= 1 and v.lsum(1, 2 * k - 2) >= 1:
        return "prefix-2k-2", [k - 1]
    if head == 1:
        # here lmax(2k-2) == 2
        q = (2 * k - 1) + (2 * k - 3) - 4
        if v.lsum(2 * k - 1, q) >= 1 or v.lmax(q + 1) <= 1:
            return "a-two-circles", [k - 1, k - 2]
        return "a-three-circles", [k - 1, k - 2, k - 3]
    return "b", None


def _plan(rem: _Remnant, k: int):
    """Pick the case rule: (label, radii at the front, radii at the back)."""
    label, radii = _front_case(rem.front_view(), k)
    if radii is not None:
        return label, radii, []
    back_label, back_radii = _front_case(rem.reversed_view(), k)
    if back_radii is not None:
        return back_label + "@back", [], back_radii
    # both ends are legless on the first 2k-3 spine vertices
    w = (2 * k - 5) + (2 * k - 1) - 2
    front_sum = rem.front_view().lsum(2 * k - 2, w)
    back_sum = rem.reversed_view().lsum(2 * k - 2, w)
    if front_sum >= 2:
        return "b-three-circles", [k - 1, k - 3], [k - 2]
    if back_sum >= 2:
        return "b-three-circles@back", [k - 2], [k - 1, k - 3]
    return "b-four-circles", [k - 1, k - 3], [k - 2, k - 4]


def _place_side(lm, cov, radii_order, from_back: bool):
    """Greedy placement: each circle pushes the done frontier as far as possible.

    ``cov[j]`` is the largest leftover radius reaching spine position ``j``;
    position ``j`` is done once ``cov[j] >= lm[j]``. Returns spine indices.
    """
    L = len(lm)
    idx = (lambda j: L - 1 - j) if from_back else (lambda j: j)
    centers = []
    f = 0
    while f < L and cov[idx(f)] >= lm[idx(f)]:
        f += 1
    for R in radii_order:
        if f >= L:
            break
        best = None
        for c in range(max(0, f - R), min(L, f + R + 1)):
            j = f
            while j < L and max(cov[idx(j)], R - abs(j - c)) >= lm[idx(j)]:
                j += 1
            if best is None or j >= best[0]:
                best = (j, c)
        c = best[1]
        for j in range(max(0, c - R), min(L, c + R + 1)):
            cov[idx(j)] = max(cov[idx(j)], R - abs(j - c))
        centers.append(idx(c))
        f = best[0]
        while f < L and cov[idx(f)] >= lm[idx(f)]:
            f += 1
    return centers


def _sweep(rem: _Remnant, front_radii, back_radii):
    """Best placement over all circle orders; returns (removed, circles, positions)."""
    lm, ls = rem.lm, rem.ls
    L = len(lm)
    best = None
    for fo in set(permutations(front_radii)):
        for bo in set(permutations(back_radii)):
            cov = [-1] * L
            fc = _place_side(lm, cov, fo, False)
            bc = _place_side(lm, cov, bo, True)
            fo, bo = fo[:len(fc)], bo[:len(bc)]
            done = [cov[j] >= lm[j] for j in range(L)]
            e = 0
            while e < L and done[e]:
                e += 1
            cut = set(range(e))
            if back_radii:
                b = L - 1
                while b >= 0 and done[b]:
                    cut.add(b)
                    b -= 1
            weight = sum(1 + ls[j] for j in cut)
            key = (weight, fo, bo)
            if best is None or key[0] > best[0][0] or (key[0] == best[0][0] and key[1:] < best[0][1:]):
                circles = [Circle(rem.spine[c], R) for c, R in zip(fc, fo)]
                circles += [Circle(rem.spine[c], R) for c, R in zip(bc, bo)]
                best = (key, circles, sorted(cut))
    return best[0][0], best[1], best[2]


def _exact_circles(g: Graph, vertices, limits: SolverLimits | None):
    sub, ids = induced_subgraph(g, vertices)
    res = burning_number_exact(sub, limits)
    return res.burning_number, [Circle(ids[c], r) for c, r in res.certificate.circles]


def _single_circle(rem: _Remnant, k: int):
    """One ball of radius k-1 at the spine middle, if it swallows the remnant."""
    L = len(rem.spine)
    c = (L - 1) // 2
    if all(k - 1 - abs(j - c) >= rem.lm[j] for j in range(L)):
        return Circle(rem.spine[c], k - 1)
    return None


def two_caterpillar_strategy(d: SpineDecomposition, limits: SolverLimits | None = None) -> StrategyOutcome:
    if d.p > 2:
        raise NotA2Caterpillar(f"two_caterpillar_strategy needs p <= 2 (got p = {d.p})")
    g = d.graph
    top = sqrt_ceil(g.n)
    rem = _Remnant(g, d.spine.vertices)
    circles, log = [], []
    floor_radius = top
    while len(rem):
        n_left = len(rem)
        k = sqrt_ceil(n_left)
        if n_left <= SMALL_N:
            b, step = _exact_circles(g, rem.alive, limits)
            if b > floor_radius:
                raise StrategyInternalError(f"small remnant needs {b} steps, only {floor_radius} left")
            circles.extend(step)
            log.append(LogEntry("small-exact", n_left, tuple(step)))
            break
        if max(rem.lm, default=0) > 2:
            raise StrategyInternalError("remnant left the 2-caterpillar class")
        single = _single_circle(rem, k)
        if single is not None:
            circles.append(single)
            log.append(LogEntry("whole-remnant", n_left, (single,)))
            break
        label, front, back = _plan(rem, k)
        weight, step, cut = _sweep(rem, front, back)
        removed = rem.members(cut)
        _audit(g, step, removed, label)
        rem.remove(cut)
        floor_radius = min(c.radius for c in step)
        _check_budget(len(rem), floor_radius, label)
        circles.extend(step)
        log.append(LogEntry(label, len(removed), tuple(step)))
    return _finish(g, circles, "2cat", top, log)


# -- leafy trees --------------------------------------------------------------

def leafy_tree_strategy(g: Graph, limits: SolverLimits | None = None) -> StrategyOutcome:
    """Strip all leaves, burn the rest one step faster, reuse the same ignitions."""
    if not is_tree(g):
        raise NotATree("leafy_tree_strategy needs a tree")
    k = sqrt_ceil(g.n)
    leaves = count_leaves(g)
    if leaves < 2 * k - 1:
        raise Unsupported(f"leaf threshold not met: {leaves} leaves < 2*{k}-1")
    inner_vertices = [v for v in range(g.n) if g.degree(v) != 1]
    sub, ids = induced_subgraph(g, inner_vertices)
    try:
        inner = dispatch_strategy(sub, limits=limits)
    except (Unsupported, BudgetExceeded) as exc:
        raise Unsupported(f"stripped tree not handled: {exc}") from None
    if inner.steps_used > k - 1:
        raise Unsupported(f"stripped tree needs {inner.steps_used} > {k - 1} steps")
    circles = [Circle(ids[c], r + 1) for c, r in inner.certificate.circles]
    log = [LogEntry("strip-leaves", leaves, ())]
    for e in inner.reduction_log:
        mapped = tuple(Circle(ids[c], r + 1) for c, r in e.circles)
        log.append(LogEntry(f"inner:{inner.method}:{e.case}", e.removed, mapped))
    return _finish(g, circles, "leafy", k, log)


# -- dispatcher ---------------------------------------------------------------

def dispatch_strategy(g: Graph, method: str = "auto", limits: SolverLimits | None = None) -> StrategyOutcome:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    if not is_tree(g):
        raise NotATree("strategies need a tree")
    d = spine_decompose(g)
    if method == "path":
        return path_strategy(g, d)
    if method == "caterpillar":
        return caterpillar_strategy(d)
    if method == "2cat":
        return two_caterpillar_strategy(d, limits)
    if method == "leafy":
        return leafy_tree_strategy(g, limits)
    if method == "spine-p":
        return spine_plus_p_strategy(d)

    if classify(g, d).tag == PATH:
        return path_strategy(g, d)
    if d.p <= 1:
        return caterpillar_strategy(d)
    if d.p <= 2:
        return two_caterpillar_strategy(d, limits)
    notes = []
    if count_leaves(g) >= 2 * sqrt_ceil(g.n) - 1:
        try:
            return leafy_tree_strategy(g, limits)
        except Unsupported as exc:
            notes.append(f"leafy: {exc}")
    fallback = spine_plus_p_strategy(d)
    fallback.status = UNPROVEN
    fallback.notes.extend(notes)
    if fallback.steps_used <= sqrt_ceil(g.n):
        return fallback
    try:
        res = burning_number_exact(g, limits)
    except BudgetExceeded as exc:
        fallback.notes.append(f"exact fallback gave up: {exc}")
        return fallback
    if res.burning_number >= fallback.steps_used:
        return fallback
    log = [LogEntry("exact", g.n, res.certificate.circles)]
    return _finish(g, res.certificate.circles, "exact", fallback.bound_claimed, log, UNPROVEN, notes)
