"""Spatial index for lazy successor generation.

The central query is "the b nearest locations whose tie-broken distance from
the source strictly exceeds a threshold".  Iterating that query with an
advancing threshold enumerates every other location exactly once, even when
many locations are equidistant, because thresholds carry the id tiebreak.
"""

from __future__ import annotations

import math
from heapq import heappush, heapreplace

from .geometry import MIN_KEY, LocationId, ProblemInstance, TieKey, tie_key

# Slack added to geometric subtree bounds before pruning, so that last-ulp
# rounding can never drop a point the brute-force reference would keep.
_PRUNE_SLACK = 1e-12


class NeighborIndex:
    """Static 2-d tree over all locations of an instance.

    Median splits on alternating axes with (coordinate, id) tie-breaking,
    so the tree, and therefore every query answer, is independent of input
    order.  Each node stores the bounding box of its whole subtree.
    """

    __slots__ = ("_pts", "_pid", "_px", "_py", "_left", "_right", "_axis",
                 "_xmin", "_xmax", "_ymin", "_ymax", "_root", "_count")

    def __init__(self, instance: ProblemInstance) -> None:
        pts = instance.locations
        self._pts = pts
        n = len(pts)
        self._pid: list[int] = [0] * n
        self._px: list[float] = [0.0] * n
        self._py: list[float] = [0.0] * n
        self._left: list[int] = [-1] * n
        self._right: list[int] = [-1] * n
        self._axis: list[int] = [0] * n
        self._xmin: list[float] = [0.0] * n
        self._xmax: list[float] = [0.0] * n
        self._ymin: list[float] = [0.0] * n
        self._ymax: list[float] = [0.0] * n
        by_x = sorted(range(n), key=lambda i: (pts[i][0], i))
        by_y = sorted(range(n), key=lambda i: (pts[i][1], i))
        self._count = 0
        self._root = self._build(by_x, by_y, 0)

    def _build(self, by_x: list[int], by_y: list[int], depth: int) -> int:
        if not by_x:
            return -1
        pts = self._pts
        slot = self._count
        self._count += 1
        axis = depth & 1
        self._axis[slot] = axis
        # Subtree bounds fall out of the two presorted id lists.
        self._xmin[slot] = pts[by_x[0]][0]
        self._xmax[slot] = pts[by_x[-1]][0]
        self._ymin[slot] = pts[by_y[0]][1]
        self._ymax[slot] = pts[by_y[-1]][1]
        main, other = (by_x, by_y) if axis == 0 else (by_y, by_x)
        m = len(main) // 2
        pid = main[m]
        self._pid[slot] = pid
        self._px[slot] = pts[pid][0]
        self._py[slot] = pts[pid][1]
        left_ids = main[:m]
        right_ids = main[m + 1:]
        left_set = set(left_ids)
        other_left = [i for i in other if i in left_set]
        other_right = [i for i in other if i != pid and i not in left_set]
        if axis == 0:
            self._left[slot] = self._build(left_ids, other_left, depth + 1)
            self._right[slot] = self._build(right_ids, other_right, depth + 1)
        else:
            self._left[slot] = self._build(other_left, left_ids, depth + 1)
            self._right[slot] = self._build(other_right, right_ids, depth + 1)
        return slot

    def nearest_beyond(
        self,
        source: LocationId,
        b: int,
        theta: TieKey = MIN_KEY,
    ) -> list[LocationId]:
        """Up to b locations with tie key strictly above theta, ascending.

        Returns the empty list when nothing lies beyond the threshold.
        """
        if b < 1:
            raise ValueError("batch size must be positive")
        sx, sy = self._pts[source]
        spt = (sx, sy)
        theta_d, theta_id = theta
        pid, px, py = self._pid, self._px, self._py
        left, right, axis = self._left, self._right, self._axis
        xmin, xmax, ymin, ymax = self._xmin, self._xmax, self._ymin, self._ymax
        heap: list[tuple[float, int]] = []  # max-heap via (-d, -id)
        slack = _PRUNE_SLACK
        stack = [self._root]
        pop = stack.pop
        push = stack.append
        while stack:
            node = pop()
            if node < 0:
                continue
            x0, x1 = xmin[node], xmax[node]
            y0, y1 = ymin[node], ymax[node]
            if theta_d > 0.0:
                # Whole subtree strictly inside the already-served radius.
                fx = sx - x0 if sx - x0 > x1 - sx else x1 - sx
                fy = sy - y0 if sy - y0 > y1 - sy else y1 - sy
                if math.sqrt(fx * fx + fy * fy) < theta_d - slack:
                    continue
            if len(heap) == b:
                worst_d = -heap[0][0]
                nx = x0 - sx if sx < x0 else (sx - x1 if sx > x1 else 0.0)
                ny = y0 - sy if sy < y0 else (sy - y1 if sy > y1 else 0.0)
                if math.sqrt(nx * nx + ny * ny) > worst_d + slack:
                    continue
            i = pid[node]
            if i != source:
                d = math.dist(spt, (px[node], py[node]))
                if d > theta_d or (d == theta_d and i > theta_id):
                    entry = (-d, -i)
                    if len(heap) < b:
                        heappush(heap, entry)
                    elif entry > heap[0]:
                        heapreplace(heap, entry)
            # Visit the source's side first (pushed last).
            if axis[node] == 0:
                near_left = sx < px[node]
            else:
                near_left = sy < py[node]
            if near_left:
                push(right[node])
                push(left[node])
            else:
                push(left[node])
                push(right[node])
        heap.sort(reverse=True)
        return [-ni for _, ni in heap]

    def within_radius(self, source: LocationId, radius: float) -> list[LocationId]:
        """All locations at distance <= radius from source, ascending by tie key."""
        if radius <= 0.0:
            raise ValueError("radius must be positive")
        sx, sy = self._pts[source]
        spt = (sx, sy)
        out: list[tuple[float, int]] = []
        stack = [self._root]
        while stack:
            node = stack.pop()
            if node < 0:
                continue
            x0, x1 = self._xmin[node], self._xmax[node]
            y0, y1 = self._ymin[node], self._ymax[node]
            nx = x0 - sx if sx < x0 else (sx - x1 if sx > x1 else 0.0)
            ny = y0 - sy if sy < y0 else (sy - y1 if sy > y1 else 0.0)
            if math.sqrt(nx * nx + ny * ny) > radius + _PRUNE_SLACK:
                continue
            i = self._pid[node]
            if i != source:
                d = math.dist(spt, (self._px[node], self._py[node]))
                if d <= radius:
                    out.append((d, i))
            stack.append(self._left[node])
            stack.append(self._right[node])
        out.sort()
        return [i for _, i in out]


def build_index(instance: ProblemInstance) -> NeighborIndex:
    return NeighborIndex(instance)


def brute_force_neighbors(
    instance: ProblemInstance,
    source: LocationId,
    b: int,
    theta: TieKey = MIN_KEY,
) -> list[LocationId]:
    """Reference implementation of nearest_beyond by full sort.

    Kept deliberately naive; it is the oracle the tree is checked against.
    """
    if b < 1:
        raise ValueError("batch size must be positive")
    keys = [
        tie_key(instance, source, v)
        for v in range(instance.n)
        if v != source
    ]
    keys = [k for k in keys if k > theta]
    keys.sort()
    return [i for _, i in keys[:b]]
