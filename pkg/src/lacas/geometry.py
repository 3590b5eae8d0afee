"""2-D geometric primitives for pathfinding on oracle-defined graphs.

Locations live in the unit square, obstacles are line segments, and two
locations are connected exactly when the straight segment between them
crosses no obstacle.  Every distance comparison in the package goes through
tie-broken keys so that equidistant locations (e.g. on grids) still have a
strict total order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

LocationId = int

# A tie-broken distance: (Euclidean distance, destination id).  Lexicographic
# tuple order gives a strict total order over destinations from a fixed source.
TieKey = tuple[float, int]

# Compares below every real tie key; used as the "nothing served yet" threshold.
MIN_KEY: TieKey = (float("-inf"), -1)

# Absolute epsilon for the collinearity branch of the orientation test.
# Coordinates are O(1), so this sits far below generator resolution.
COLLINEAR_EPS = 1e-12

# Obstacle endpoints may poke slightly past the workspace so walls can seal
# its boundary; locations themselves must stay inside [0, 1]^2.
OBSTACLE_BOUND = 0.1


class Point(NamedTuple):
    x: float
    y: float


class Segment(NamedTuple):
    a: Point
    b: Point


class CallCounter:
    """Counts oracle invocations. One counter per run; not shared across threads."""

    __slots__ = ("value",)

    def __init__(self) -> None:
        self.value = 0

    def __repr__(self) -> str:
        return f"CallCounter({self.value})"


def dist(a: Point, b: Point) -> float:
    """Euclidean distance between two points."""
    return math.dist(a, b)


def _orient(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> int:
    """Sign of the cross product (b-a) x (c-a); 0 within COLLINEAR_EPS."""
    v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if v > COLLINEAR_EPS:
        return 1
    if v < -COLLINEAR_EPS:
        return -1
    return 0


def _within_span(ax: float, ay: float, bx: float, by: float, px: float, py: float) -> bool:
    """Whether p (known collinear with a-b) lies inside the closed box of a-b."""
    return (
        min(ax, bx) <= px <= max(ax, bx)
        and min(ay, by) <= py <= max(ay, by)
    )


def segments_intersect(s1: Segment, s2: Segment) -> bool:
    """Closed-segment intersection test.

    Collinear overlap and mere endpoint contact both count as intersection.
    """
    (ax, ay), (bx, by) = s1
    (cx, cy), (dx, dy) = s2
    o1 = _orient(ax, ay, bx, by, cx, cy)
    o2 = _orient(ax, ay, bx, by, dx, dy)
    o3 = _orient(cx, cy, dx, dy, ax, ay)
    o4 = _orient(cx, cy, dx, dy, bx, by)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and _within_span(ax, ay, bx, by, cx, cy):
        return True
    if o2 == 0 and _within_span(ax, ay, bx, by, dx, dy):
        return True
    if o3 == 0 and _within_span(cx, cy, dx, dy, ax, ay):
        return True
    if o4 == 0 and _within_span(cx, cy, dx, dy, bx, by):
        return True
    return False


@dataclass(eq=True)
class ProblemInstance:
    """A pathfinding instance: locations, start/goal ids, and segment obstacles.

    The graph itself is implicit; adjacency between two locations is decided
    by the connect() oracle below.
    """

    locations: list[Point]
    start: LocationId
    goal: LocationId
    obstacles: list[Segment]
    # Flattened obstacle rows with bounding boxes, built on first use.
    _rows: list[tuple] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.locations)
        if n < 2:
            raise ValueError("instance needs at least two locations")
        for i, (x, y) in enumerate(self.locations):
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValueError(f"location {i} has non-finite coordinates")
            if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
                raise ValueError(f"location {i} outside the unit workspace: ({x}, {y})")
        if not (0 <= self.start < n):
            raise ValueError(f"start id {self.start} out of range")
        if not (0 <= self.goal < n):
            raise ValueError(f"goal id {self.goal} out of range")
        if self.start == self.goal:
            raise ValueError("start and goal must be distinct")
        seen: set[tuple[float, float]] = set()
        for i, p in enumerate(self.locations):
            key = (p[0], p[1])
            if key in seen:
                raise ValueError(f"location {i} duplicates another location's coordinates")
            seen.add(key)
        lo, hi = -OBSTACLE_BOUND, 1.0 + OBSTACLE_BOUND
        for j, (a, b) in enumerate(self.obstacles):
            if a == b:
                raise ValueError(f"obstacle {j} is degenerate (zero length)")
            for (x, y) in (a, b):
                if not (math.isfinite(x) and math.isfinite(y)):
                    raise ValueError(f"obstacle {j} has non-finite coordinates")
                if not (lo <= x <= hi and lo <= y <= hi):
                    raise ValueError(f"obstacle {j} endpoint outside [{lo}, {hi}]^2")

    @property
    def n(self) -> int:
        return len(self.locations)

    def obstacle_rows(self) -> list[tuple]:
        if self._rows is None:
            rows = []
            for (ax, ay), (bx, by) in self.obstacles:
                rows.append(
                    (
                        ax, ay, bx, by,
                        min(ax, bx), max(ax, bx), min(ay, by), max(ay, by),
                    )
                )
            self._rows = rows
        return self._rows


def tie_key(instance: ProblemInstance, source: LocationId, dest: LocationId) -> TieKey:
    """Tie-broken distance from source to dest: (distance, dest id)."""
    if source == dest:
        raise ValueError("tie_key requires two distinct locations")
    locs = instance.locations
    return (math.dist(locs[source], locs[dest]), dest)


def _segment_is_free(rows: list[tuple], px: float, py: float, qx: float, qy: float) -> bool:
    """Whether segment p-q crosses none of the precomputed obstacle rows.

    Inlined orientation tests; must stay equivalent to segments_intersect
    (cross-checked in the tests).
    """
    if px < qx:
        slx, shx = px, qx
    else:
        slx, shx = qx, px
    if py < qy:
        sly, shy = py, qy
    else:
        sly, shy = qy, py
    eps = COLLINEAR_EPS
    for ax, ay, bx, by, olx, ohx, oly, ohy in rows:
        if ohx < slx or olx > shx or ohy < sly or oly > shy:
            continue
        # orient(p, q, a) and orient(p, q, b)
        v1 = (qx - px) * (ay - py) - (qy - py) * (ax - px)
        v2 = (qx - px) * (by - py) - (qy - py) * (bx - px)
        o1 = 0 if -eps <= v1 <= eps else (1 if v1 > 0 else -1)
        o2 = 0 if -eps <= v2 <= eps else (1 if v2 > 0 else -1)
        # orient(a, b, p) and orient(a, b, q)
        v3 = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
        v4 = (bx - ax) * (qy - ay) - (by - ay) * (qx - ax)
        o3 = 0 if -eps <= v3 <= eps else (1 if v3 > 0 else -1)
        o4 = 0 if -eps <= v4 <= eps else (1 if v4 > 0 else -1)
        if o1 != o2 and o3 != o4:
            return False
        if o1 == 0 and min(px, qx) <= ax <= max(px, qx) and min(py, qy) <= ay <= max(py, qy):
            return False
        if o2 == 0 and min(px, qx) <= bx <= max(px, qx) and min(py, qy) <= by <= max(py, qy):
            return False
        if o3 == 0 and olx <= px <= ohx and oly <= py <= ohy:
            return False
        if o4 == 0 and olx <= qx <= ohx and oly <= qy <= ohy:
            return False
    return True


def connect(
    instance: ProblemInstance,
    u: LocationId,
    v: LocationId,
    counter: CallCounter,
) -> bool:
    """Traversability oracle: true iff the straight u-v segment avoids all obstacles.

    Symmetric in u and v; increments the counter by exactly one per call.
    Contact with an obstacle, including endpoint grazing, counts as blocked.
    """
    if u == v:
        raise ValueError("connect requires two distinct locations")
    counter.value += 1
    locs = instance.locations
    p = locs[u]
    q = locs[v]
    return _segment_is_free(instance.obstacle_rows(), p[0], p[1], q[0], q[1])


def segment_free(
    instance: ProblemInstance,
    p: Point,
    q: Point,
    counter: CallCounter,
) -> bool:
    """Point-based variant of the oracle for planners that sample fresh points.

    Counts one oracle call per invocation, like connect().
    """
    counter.value += 1
    return _segment_is_free(instance.obstacle_rows(), p[0], p[1], q[0], q[1])
