"""Anytime lazy-successor search over oracle-defined graphs.

Successors of a node are produced in small batches by a thresholded
nearest-neighbor query instead of all at once, so the huge branching factor
never materializes.  Each node remembers how far its successor generation
has progressed (a tie-broken distance threshold), which makes repeated
invocations exhaustive: run to open-list exhaustion the search is complete,
and with the anytime machinery enabled (cost-to-come maintenance, tree
rewiring on shortcut discovery, f-value pruning and node revival) it
converges to the optimal solution while emitting every intermediate
improvement.
"""

from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional

from .geometry import (
    MIN_KEY,
    CallCounter,
    LocationId,
    Point,
    ProblemInstance,
    TieKey,
    connect,
)
from .neighbors import NeighborIndex
from .rng import stream

OnImprove = Callable[[list[int], float, float], None]


class SearchNode:
    """Search-tree record for one location.

    g is the cost-to-come along the current parent chain; it only decreases
    after creation (rewiring).  theta is how far successor generation has
    progressed for this node; it only increases.  neighbors is the ordered
    set of discovered outgoing connections, the arcs rewiring walks.
    """

    __slots__ = ("loc", "pt", "parent", "theta", "g", "neighbors", "_neighbor_ids")

    def __init__(self, loc: LocationId, pt: Point, parent: Optional["SearchNode"], g: float):
        self.loc = loc
        self.pt = pt
        self.parent = parent
        self.theta: TieKey = MIN_KEY
        self.g = g
        self.neighbors: list[SearchNode] = []
        self._neighbor_ids: set[int] = set()

    def add_neighbor(self, node: "SearchNode") -> None:
        if node.loc not in self._neighbor_ids:
            self._neighbor_ids.add(node.loc)
            self.neighbors.append(node)

    def __repr__(self) -> str:
        return f"SearchNode(loc={self.loc}, g={self.g:.4f})"


@dataclass
class SearchBudget:
    """Cooperative limits; polled once per search iteration."""

    time_limit: float | None = None
    max_iterations: int | None = None


@dataclass
class SearchConfig:
    b: int = 10                  # batch size per successor query
    sort_batch: bool = True      # process batches goal-nearest-last (greedy-first)
    reinsert: bool = True        # re-encountered nodes jump to the top of Open
    rolling: bool = True         # invoked nodes with non-empty batches sink to the bottom
    grandparent: bool = False    # try attaching new nodes to the grandparent
    anytime: bool = True         # rewiring + f-pruning + refinement after first solution
    budget: SearchBudget = field(default_factory=SearchBudget)
    seed: int = 0                # drives random batch order when sort_batch is off
    capture_tree: bool = False   # keep an explored-tree snapshot on the outcome
    on_batch: Callable[[LocationId, tuple], None] | None = None
    inspect: Callable[[int, dict, Optional[SearchNode]], None] | None = None


@dataclass
class SearchSnapshot:
    explored: list[LocationId]
    edges: list[tuple[LocationId, LocationId]]  # parent arcs


@dataclass
class SearchOutcome:
    """Result of one search run.

    kind is "solution", "no_solution" (certified: the search space was
    exhausted), or "failure" (budget ran out first).  events holds one
    (elapsed seconds, iteration, cost) triple per solution improvement.
    """

    kind: str
    path: list[LocationId] | None = None
    points: list[Point] | None = None  # for planners that sample fresh points
    cost: float | None = None
    proven_optimal: bool = False
    reason: str | None = None
    events: list[tuple[float, int, float]] = field(default_factory=list)
    iterations: int = 0
    elapsed: float = 0.0
    snapshot: SearchSnapshot | None = None

    @property
    def solved(self) -> bool:
        return self.kind == "solution"


class KDTreeBatches:
    """Lazy successor generator backed by the spatial index."""

    __slots__ = ("_index", "_pts")

    def __init__(self, index: NeighborIndex, instance: ProblemInstance):
        self._index = index
        self._pts = instance.locations

    def next_batch(self, node: SearchNode, b: int) -> list[LocationId]:
        batch = self._index.nearest_beyond(node.loc, b, node.theta)
        if batch:
            last = batch[-1]
            node.theta = (math.dist(node.pt, self._pts[last]), last)
        return batch


def backtrack(node: SearchNode) -> list[LocationId]:
    """Path of location ids from the root to this node, following parents."""
    path = []
    seen = set()
    cur: SearchNode | None = node
    while cur is not None:
        if cur.loc in seen:
            raise RuntimeError("cycle in parent chain; search tree corrupted")
        seen.add(cur.loc)
        path.append(cur.loc)
        cur = cur.parent
    path.reverse()
    return path


def path_cost(instance: ProblemInstance, path: list[LocationId]) -> float:
    """Sum of consecutive Euclidean edge lengths; zero for a single location."""
    locs = instance.locations
    total = 0.0
    for u, v in zip(path, path[1:]):
        total += math.dist(locs[u], locs[v])
    return total


def validate_path(
    instance: ProblemInstance,
    path: list[LocationId],
    counter: CallCounter,
) -> bool:
    """Whether path is a valid start-to-goal solution under the oracle."""
    if not path or path[0] != instance.start or path[-1] != instance.goal:
        return False
    n = instance.n
    for u, v in zip(path, path[1:]):
        if not (0 <= u < n and 0 <= v < n) or u == v:
            return False
        if not connect(instance, u, v, counter):
            return False
    return True


def rewire_from(
    seed: SearchNode,
    n_goal: SearchNode | None,
    open_: deque,
    goal_pt: Point,
) -> None:
    """Label-correcting pass over discovered arcs, restoring shortest paths.

    Started whenever a shortcut into a known node appears.  Nodes whose
    f-value drops below the incumbent solution's are pushed back onto Open
    so pruning cannot starve them.
    """
    queue = deque((seed,))
    while queue:
        n_from = queue.popleft()
        g_from = n_from.g
        pt_from = n_from.pt
        for n_to in n_from.neighbors:
            g_new = g_from + math.dist(pt_from, n_to.pt)
            if g_new < n_to.g:
                n_to.g = g_new
                n_to.parent = n_from
                queue.append(n_to)
                if n_goal is not None and g_new + math.dist(n_to.pt, goal_pt) < n_goal.g:
                    open_.append(n_to)


def run_lazy_search(
    instance: ProblemInstance,
    batches,
    config: SearchConfig,
    counter: CallCounter,
    on_improve: OnImprove | None = None,
) -> SearchOutcome:
    """Core loop shared by the tree-backed search and its presorted variant.

    `batches` must provide next_batch(node, b) returning the next batch of
    candidate successor ids in ascending tie-key order, advancing the node's
    threshold as a side effect.
    """
    t0 = time.perf_counter()
    locs = instance.locations
    goal = instance.goal
    goal_pt = locs[goal]
    time_limit = config.budget.time_limit
    max_iter = config.budget.max_iterations
    b = config.b
    anytime = config.anytime
    root = SearchNode(instance.start, locs[instance.start], None, 0.0)
    explored: dict[int, SearchNode] = {instance.start: root}
    open_: deque[SearchNode] = deque((root,))
    n_goal: SearchNode | None = None
    order_rng = None if config.sort_batch else stream(config.seed, "batch-order")
    events: list[tuple[float, int, float]] = []
    iterations = 0
    reason = None

    def record_improvement() -> None:
        elapsed = time.perf_counter() - t0
        events.append((elapsed, iterations, n_goal.g))
        if on_improve is not None:
            on_improve(backtrack(n_goal), n_goal.g, elapsed)

    while open_:
        if time_limit is not None and time.perf_counter() - t0 >= time_limit:
            reason = "timeout"
            break
        if max_iter is not None and iterations >= max_iter:
            reason = "iteration-cap"
            break
        iterations += 1
        node = open_[-1]
        if node.loc == goal and n_goal is None:
            n_goal = node
            record_improvement()
            if not anytime:
                break
        if anytime and n_goal is not None:
            if node.g + math.dist(node.pt, goal_pt) >= n_goal.g:
                open_.pop()
                continue
        batch = batches.next_batch(node, b)
        if config.on_batch is not None:
            config.on_batch(node.loc, tuple(batch))
        if not batch:
            open_.pop()
            continue
        if config.rolling:
            open_.pop()
            open_.appendleft(node)
        if config.sort_batch:
            # Candidate nearest the goal is processed last, hence popped first.
            order = sorted(
                batch,
                key=lambda v: (math.dist(locs[v], goal_pt), v),
                reverse=True,
            )
        else:
            order = list(batch)
            order_rng.shuffle(order)
        for v in order:
            if not connect(instance, node.loc, v, counter):
                continue
            vpt = locs[v]
            existing = explored.get(v)
            if existing is None:
                parent = node
                if (
                    config.grandparent
                    and node.parent is not None
                    and connect(instance, node.parent.loc, v, counter)
                ):
                    parent = node.parent
                child = SearchNode(v, vpt, parent, parent.g + math.dist(parent.pt, vpt))
                explored[v] = child
                open_.append(child)
                node.add_neighbor(child)
                if parent is not node:
                    parent.add_neighbor(child)
            else:
                node.add_neighbor(existing)
                seeds = [node]
                if (
                    config.grandparent
                    and node.parent is not None
                    and node.parent.loc != v
                    and connect(instance, node.parent.loc, v, counter)
                ):
                    node.parent.add_neighbor(existing)
                    seeds.append(node.parent)
                if anytime:
                    best = n_goal.g if n_goal is not None else None
                    for s in seeds:
                        rewire_from(s, n_goal, open_, goal_pt)
                    if best is not None and n_goal.g < best:
                        record_improvement()
                if config.reinsert:
                    open_.append(existing)
        if config.inspect is not None:
            config.inspect(iterations, explored, n_goal)

    elapsed = time.perf_counter() - t0
    snapshot = None
    if config.capture_tree:
        snapshot = SearchSnapshot(
            explored=sorted(explored),
            edges=[(n.parent.loc, n.loc) for n in explored.values() if n.parent is not None],
        )
    if n_goal is not None:
        path = backtrack(n_goal)
        proven = anytime and not open_
        return SearchOutcome(
            kind="solution",
            path=path,
            points=[locs[i] for i in path],
            cost=n_goal.g,
            proven_optimal=proven,
            events=events,
            iterations=iterations,
            elapsed=elapsed,
            snapshot=snapshot,
        )
    if not open_:
        return SearchOutcome(
            kind="no_solution",
            iterations=iterations,
            elapsed=elapsed,
            snapshot=snapshot,
        )
    return SearchOutcome(
        kind="failure",
        reason=reason,
        iterations=iterations,
        elapsed=elapsed,
        snapshot=snapshot,
    )


def lacas_search(
    instance: ProblemInstance,
    index: NeighborIndex,
    config: SearchConfig,
    counter: CallCounter,
    on_improve: OnImprove | None = None,
) -> SearchOutcome:
    """Lazy constraints addition search; the grandparent flag gives the
    triangle-shortcut variant."""
    return run_lazy_search(
        instance, KDTreeBatches(index, instance), config, counter, on_improve
    )
