"""Comparison algorithms sharing the oracle, index, and outcome types.

Graph-based baselines (best-first searches, depth-first search, and the
presorted partial-expansion variant) operate on the same implicit graph as
the lazy search.  The sampling-based planners ignore the given locations
entirely and grow trees from fresh uniform samples; for them the call
counter tallies segment collision queries.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from heapq import heappop, heappush

from .geometry import (
    MIN_KEY,
    CallCounter,
    LocationId,
    Point,
    ProblemInstance,
    connect,
    segment_free,
    tie_key,
)
from .neighbors import NeighborIndex
from .rng import stream
from .search import (
    SearchBudget,
    SearchConfig,
    SearchOutcome,
    run_lazy_search,
)


@dataclass(frozen=True)
class AllSuccessors:
    """Enumerate every other location; complete but expensive."""


@dataclass(frozen=True)
class KNearest:
    k: int = 10


@dataclass(frozen=True)
class Radius:
    r: float = 0.1


SuccessorMode = AllSuccessors | KNearest | Radius


def _candidates(
    instance: ProblemInstance,
    index: NeighborIndex,
    mode: SuccessorMode,
    u: LocationId,
) -> list[LocationId]:
    if isinstance(mode, AllSuccessors):
        return [v for v in range(instance.n) if v != u]
    if isinstance(mode, KNearest):
        return index.nearest_beyond(u, mode.k, MIN_KEY)
    return index.within_radius(u, mode.r)


def _expired(t0: float, budget: SearchBudget, iterations: int) -> str | None:
    if budget.time_limit is not None and time.perf_counter() - t0 >= budget.time_limit:
        return "timeout"
    if budget.max_iterations is not None and iterations >= budget.max_iterations:
        return "iteration-cap"
    return None


def _id_path(parents: dict[int, int], goal: LocationId) -> list[LocationId]:
    path = [goal]
    while parents[path[-1]] >= 0:
        path.append(parents[path[-1]])
    path.reverse()
    return path


def astar_search(
    instance: ProblemInstance,
    index: NeighborIndex,
    mode: SuccessorMode,
    counter: CallCounter,
    budget: SearchBudget | None = None,
) -> SearchOutcome:
    """Best-first search on f = g + straight-line distance to goal.

    With AllSuccessors this is complete and optimal and serves as the
    optimality reference for the lazy search.  The restricted modes are
    incomplete: running out of nodes proves nothing about the full graph,
    so their exhaustion is reported as a failure, never as no-solution.
    """
    budget = budget or SearchBudget()
    t0 = time.perf_counter()
    locs = instance.locations
    goal = instance.goal
    goal_pt = locs[goal]
    g_best = {instance.start: 0.0}
    parents = {instance.start: -1}
    closed: set[int] = set()
    h0 = math.dist(locs[instance.start], goal_pt)
    heap: list[tuple[float, float, int, float]] = [(h0, h0, instance.start, 0.0)]
    iterations = 0
    reason = None
    while heap:
        reason = _expired(t0, budget, iterations)
        if reason:
            break
        f, h, u, g = heappop(heap)
        if u in closed or g > g_best.get(u, math.inf):
            continue
        iterations += 1
        if u == goal:
            path = _id_path(parents, goal)
            elapsed = time.perf_counter() - t0
            return SearchOutcome(
                kind="solution",
                path=path,
                points=[locs[i] for i in path],
                cost=g,
                proven_optimal=isinstance(mode, AllSuccessors),
                events=[(elapsed, iterations, g)],
                iterations=iterations,
                elapsed=elapsed,
            )
        closed.add(u)
        upt = locs[u]
        for v in _candidates(instance, index, mode, u):
            if v in closed:
                continue
            if not connect(instance, u, v, counter):
                continue
            g2 = g + math.dist(upt, locs[v])
            if g2 < g_best.get(v, math.inf):
                g_best[v] = g2
                parents[v] = u
                hv = math.dist(locs[v], goal_pt)
                heappush(heap, (g2 + hv, hv, v, g2))
    elapsed = time.perf_counter() - t0
    if reason:
        return SearchOutcome(kind="failure", reason=reason, iterations=iterations, elapsed=elapsed)
    if isinstance(mode, AllSuccessors):
        return SearchOutcome(kind="no_solution", iterations=iterations, elapsed=elapsed)
    return SearchOutcome(
        kind="failure", reason="restricted-exhaustion", iterations=iterations, elapsed=elapsed
    )


def gbfs_search(
    instance: ProblemInstance,
    index: NeighborIndex,
    mode: SuccessorMode,
    counter: CallCounter,
    budget: SearchBudget | None = None,
) -> SearchOutcome:
    """Greedy best-first: priority is the goal distance alone; first goal pop wins."""
    budget = budget or SearchBudget()
    t0 = time.perf_counter()
    locs = instance.locations
    goal = instance.goal
    goal_pt = locs[goal]
    parents = {instance.start: -1}
    seen = {instance.start}
    heap = [(math.dist(locs[instance.start], goal_pt), instance.start)]
    iterations = 0
    reason = None
    while heap:
        reason = _expired(t0, budget, iterations)
        if reason:
            break
        _, u = heappop(heap)
        iterations += 1
        if u == goal:
            path = _id_path(parents, goal)
            cost = sum(math.dist(locs[a], locs[b]) for a, b in zip(path, path[1:]))
            elapsed = time.perf_counter() - t0
            return SearchOutcome(
                kind="solution",
                path=path,
                points=[locs[i] for i in path],
                cost=cost,
                events=[(elapsed, iterations, cost)],
                iterations=iterations,
                elapsed=elapsed,
            )
        for v in _candidates(instance, index, mode, u):
            if v in seen:
                continue
            if not connect(instance, u, v, counter):
                continue
            seen.add(v)
            parents[v] = u
            heappush(heap, (math.dist(locs[v], goal_pt), v))
    elapsed = time.perf_counter() - t0
    if reason:
        return SearchOutcome(kind="failure", reason=reason, iterations=iterations, elapsed=elapsed)
    if isinstance(mode, AllSuccessors):
        return SearchOutcome(kind="no_solution", iterations=iterations, elapsed=elapsed)
    return SearchOutcome(
        kind="failure", reason="restricted-exhaustion", iterations=iterations, elapsed=elapsed
    )


def dfs_search(
    instance: ProblemInstance,
    counter: CallCounter,
    budget: SearchBudget | None = None,
) -> SearchOutcome:
    """Depth-first over the implicit graph, trying nearer-to-goal successors first.

    Each location is visited at most once.  Implemented with an explicit
    stack of candidate iterators so deep instances cannot overflow the
    interpreter stack; connectivity is only checked when a candidate is
    actually tried.
    """
    budget = budget or SearchBudget()
    t0 = time.perf_counter()
    locs = instance.locations
    goal = instance.goal
    goal_pt = locs[goal]
    start = instance.start
    visited = {start}
    parents = {start: -1}
    iterations = 1

    def ordered_candidates(u: LocationId):
        order = sorted(
            (v for v in range(instance.n) if v != u),
            key=lambda v: (math.dist(locs[v], goal_pt), v),
        )
        return iter(order)

    stack = [(start, ordered_candidates(start))]
    reason = None
    while stack:
        reason = _expired(t0, budget, iterations)
        if reason:
            break
        u, it = stack[-1]
        advanced = False
        for v in it:
            if v in visited:
                continue
            if not connect(instance, u, v, counter):
                continue
            visited.add(v)
            parents[v] = u
            iterations += 1
            if v == goal:
                path = _id_path(parents, goal)
                cost = sum(math.dist(locs[a], locs[b]) for a, b in zip(path, path[1:]))
                elapsed = time.perf_counter() - t0
                return SearchOutcome(
                    kind="solution",
                    path=path,
                    points=[locs[i] for i in path],
                    cost=cost,
                    events=[(elapsed, iterations, cost)],
                    iterations=iterations,
                    elapsed=elapsed,
                )
            stack.append((v, ordered_candidates(v)))
            advanced = True
            break
        if not advanced:
            stack.pop()
    elapsed = time.perf_counter() - t0
    if reason:
        return SearchOutcome(kind="failure", reason=reason, iterations=iterations, elapsed=elapsed)
    return SearchOutcome(kind="no_solution", iterations=iterations, elapsed=elapsed)


class PresortedBatches:
    """Successor generator that sorts all locations up front per node.

    Serves the exact batches the tree-backed generator would, so it isolates
    the cost of the full sort: identical oracle-call sequences, more work
    per first invocation.
    """

    __slots__ = ("_instance", "_state")

    def __init__(self, instance: ProblemInstance):
        self._instance = instance
        self._state: dict[int, tuple[list[int], int]] = {}

    def next_batch(self, node, b: int) -> list[LocationId]:
        state = self._state.get(node.loc)
        if state is None:
            keys = sorted(
                tie_key(self._instance, node.loc, v)
                for v in range(self._instance.n)
                if v != node.loc
            )
            state = ([i for _, i in keys], 0)
        order, cursor = state
        batch = order[cursor : cursor + b]
        self._state[node.loc] = (order, cursor + len(batch))
        if batch:
            node.theta = tie_key(self._instance, node.loc, batch[-1])
        return batch


def pe_search(
    instance: ProblemInstance,
    config: SearchConfig,
    counter: CallCounter,
    on_improve=None,
) -> SearchOutcome:
    """Partial-expansion variant: the lazy search without the spatial index."""
    return run_lazy_search(
        instance, PresortedBatches(instance), config, counter, on_improve
    )


@dataclass
class SBMPParams:
    """Knobs for the sampling-based planners."""

    step: float = 0.1  # max edge length when steering (goal connections exempt)
    seed: int = 0
    max_nodes: int | None = None


def _steer(from_pt: Point, to_pt: Point, step: float) -> Point:
    d = math.dist(from_pt, to_pt)
    if d <= step:
        return to_pt
    f = step / d
    return Point(from_pt[0] + f * (to_pt[0] - from_pt[0]),
                 from_pt[1] + f * (to_pt[1] - from_pt[1]))


def _nearest(pts: list[Point], q: Point) -> int:
    best = 0
    best_d = math.dist(pts[0], q)
    for i in range(1, len(pts)):
        d = math.dist(pts[i], q)
        if d < best_d:
            best_d = d
            best = i
    return best


def _tree_path(pts: list[Point], parents: list[int], i: int) -> list[Point]:
    out = []
    while i >= 0:
        out.append(pts[i])
        i = parents[i]
    out.reverse()
    return out


def _points_outcome(points: list[Point], iterations: int, t0: float) -> SearchOutcome:
    cost = sum(math.dist(a, b) for a, b in zip(points, points[1:]))
    elapsed = time.perf_counter() - t0
    return SearchOutcome(
        kind="solution",
        points=points,
        cost=cost,
        events=[(elapsed, iterations, cost)],
        iterations=iterations,
        elapsed=elapsed,
    )


def rrt_search(
    instance: ProblemInstance,
    params: SBMPParams,
    counter: CallCounter,
    budget: SearchBudget | None = None,
) -> SearchOutcome:
    """Single random tree from the start; a goal connection is attempted at
    every node addition.  Uses only the instance's start/goal points and
    obstacles, never its location set."""
    budget = budget or SearchBudget()
    t0 = time.perf_counter()
    start_pt = instance.locations[instance.start]
    goal_pt = instance.locations[instance.goal]
    rng = stream(params.seed, "rrt")
    pts = [start_pt]
    parents = [-1]
    iterations = 0
    if segment_free(instance, start_pt, goal_pt, counter):
        return _points_outcome([start_pt, goal_pt], iterations, t0)
    while True:
        reason = _expired(t0, budget, iterations)
        if reason:
            break
        if params.max_nodes is not None and len(pts) >= params.max_nodes:
            reason = "node-cap"
            break
        iterations += 1
        q = Point(rng.random(), rng.random())
        ni = _nearest(pts, q)
        if pts[ni] == q:
            continue
        new_pt = _steer(pts[ni], q, params.step)
        if not segment_free(instance, pts[ni], new_pt, counter):
            continue
        pts.append(new_pt)
        parents.append(ni)
        if segment_free(instance, new_pt, goal_pt, counter):
            points = _tree_path(pts, parents, len(pts) - 1)
            points.append(goal_pt)
            return _points_outcome(points, iterations, t0)
    return SearchOutcome(
        kind="failure", reason=reason, iterations=iterations,
        elapsed=time.perf_counter() - t0,
    )


def rrt_connect_search(
    instance: ProblemInstance,
    params: SBMPParams,
    counter: CallCounter,
    budget: SearchBudget | None = None,
) -> SearchOutcome:
    """Bi-directional variant: trees from start and goal grow toward each other.

    After each successful extension the other tree greedily steps toward the
    new point until it reaches it or hits an obstacle; the trees swap roles
    every iteration.
    """
    budget = budget or SearchBudget()
    t0 = time.perf_counter()
    start_pt = instance.locations[instance.start]
    goal_pt = instance.locations[instance.goal]
    rng = stream(params.seed, "rrt-connect")
    trees = (
        {"pts": [start_pt], "parents": [-1]},
        {"pts": [goal_pt], "parents": [-1]},
    )
    a, bee = 0, 1
    iterations = 0

    def join(i_a: int, i_b: int, a_side: int) -> SearchOutcome:
        # Path through the meeting point; tree 0 is start-rooted.
        pa = _tree_path(trees[a_side]["pts"], trees[a_side]["parents"], i_a)
        pb = _tree_path(trees[1 - a_side]["pts"], trees[1 - a_side]["parents"], i_b)
        pb.reverse()
        if pa and pb and pa[-1] == pb[0]:
            pb = pb[1:]
        points = pa + pb if a_side == 0 else list(reversed(pa + pb))
        return _points_outcome(points, iterations, t0)

    while True:
        reason = _expired(t0, budget, iterations)
        if reason:
            break
        if params.max_nodes is not None and (
            len(trees[0]["pts"]) + len(trees[1]["pts"]) >= params.max_nodes
        ):
            reason = "node-cap"
            break
        iterations += 1
        q = Point(rng.random(), rng.random())
        ta, tb = trees[a], trees[bee]
        ni = _nearest(ta["pts"], q)
        if ta["pts"][ni] == q:
            continue
        new_pt = _steer(ta["pts"][ni], q, params.step)
        if segment_free(instance, ta["pts"][ni], new_pt, counter):
            ta["pts"].append(new_pt)
            ta["parents"].append(ni)
            target_i = len(ta["pts"]) - 1
            # Greedy connect from the other tree toward the new point.
            ci = _nearest(tb["pts"], new_pt)
            while True:
                step_pt = _steer(tb["pts"][ci], new_pt, params.step)
                if not segment_free(instance, tb["pts"][ci], step_pt, counter):
                    break
                tb["pts"].append(step_pt)
                tb["parents"].append(ci)
                ci = len(tb["pts"]) - 1
                if step_pt == new_pt:
                    if a == 0:
                        return join(target_i, ci, 0)
                    return join(target_i, ci, 1)
        a, bee = bee, a
    return SearchOutcome(
        kind="failure", reason=reason, iterations=iterations,
        elapsed=time.perf_counter() - t0,
    )
