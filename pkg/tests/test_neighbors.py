import math

import pytest

from lacas.geometry import MIN_KEY, Point, ProblemInstance, tie_key
from lacas.neighbors import NeighborIndex, brute_force_neighbors, build_index
from lacas.rng import stream

from oracles import random_instance


def line_instance():
    pts = [Point(0.0, 0.5), Point(0.1, 0.5), Point(0.2, 0.5), Point(0.5, 0.5)]
    return ProblemInstance(pts, 0, 3, [])


def grid_instance(side=20):
    pts = [Point(i / (side - 1), j / (side - 1)) for j in range(side) for i in range(side)]
    return ProblemInstance(pts, 0, len(pts) - 1, [])


class TestNearestBeyond:
    def test_line_first_batch(self):
        inst = line_instance()
        index = NeighborIndex(inst)
        assert index.nearest_beyond(0, 2, MIN_KEY) == [1, 2]

    def test_line_beyond_threshold(self):
        inst = line_instance()
        index = NeighborIndex(inst)
        theta = tie_key(inst, 0, 2)
        assert index.nearest_beyond(0, 2, theta) == [3]

    def test_nothing_beyond_farthest(self):
        inst = line_instance()
        index = NeighborIndex(inst)
        assert index.nearest_beyond(0, 5, tie_key(inst, 0, 3)) == []

    def test_two_point_instance(self):
        inst = ProblemInstance([Point(0.3, 0.3), Point(0.7, 0.7)], 0, 1, [])
        index = NeighborIndex(inst)
        assert index.nearest_beyond(0, 3, MIN_KEY) == [1]
        assert index.nearest_beyond(0, 3, tie_key(inst, 0, 1)) == []

    def test_b_at_least_one(self):
        inst = line_instance()
        index = NeighborIndex(inst)
        with pytest.raises(ValueError):
            index.nearest_beyond(0, 0, MIN_KEY)

    def test_b_larger_than_n_returns_all(self):
        inst = random_instance(21, 60, 0)
        index = NeighborIndex(inst)
        got = index.nearest_beyond(7, 1000, MIN_KEY)
        assert sorted(got) == [v for v in range(60) if v != 7]

    def test_matches_brute_force_randomized(self):
        inst = random_instance(22, 500, 0)
        index = NeighborIndex(inst)
        rng = stream(7, "nb-check")
        for _ in range(300):
            source = rng.randrange(500)
            b = 1 + rng.randrange(20)
            pick = rng.randrange(500)
            theta = MIN_KEY if pick == source else tie_key(inst, source, pick)
            assert index.nearest_beyond(source, b, theta) == brute_force_neighbors(
                inst, source, b, theta
            )

    def test_matches_brute_force_on_grid_ties(self):
        inst = grid_instance(15)
        index = NeighborIndex(inst)
        rng = stream(8, "nb-grid")
        n = inst.n
        for _ in range(200):
            source = rng.randrange(n)
            b = 1 + rng.randrange(12)
            pick = rng.randrange(n)
            theta = MIN_KEY if pick == source else tie_key(inst, source, pick)
            assert index.nearest_beyond(source, b, theta) == brute_force_neighbors(
                inst, source, b, theta
            )

    def test_ascending_tie_key_order(self):
        inst = random_instance(23, 200, 0)
        index = NeighborIndex(inst)
        batch = index.nearest_beyond(0, 25, MIN_KEY)
        keys = [tie_key(inst, 0, v) for v in batch]
        assert keys == sorted(keys)

    def test_build_order_independent(self):
        # Same point set presented in different id order must answer the same
        # queries once ids are mapped back.
        rng = stream(9, "perm")
        pts = []
        taken = set()
        while len(pts) < 80:
            p = Point(rng.random(), rng.random())
            if (p.x, p.y) not in taken:
                taken.add((p.x, p.y))
                pts.append(p)
        inst = ProblemInstance(pts, 0, 1, [])
        perm = list(range(80))
        rng.shuffle(perm)
        inv = [0] * 80
        for new, old in enumerate(perm):
            inv[old] = new
        inst2 = ProblemInstance([pts[old] for old in perm], inv[0], inv[1], [])
        index1 = NeighborIndex(inst)
        index2 = NeighborIndex(inst2)
        for source in range(0, 80, 7):
            got1 = index1.nearest_beyond(source, 9, MIN_KEY)
            got2 = index2.nearest_beyond(inv[source], 9, MIN_KEY)
            # Compare as coordinate sequences; ids differ by the permutation.
            assert [pts[i] for i in got1] == [inst2.locations[i] for i in got2]

    def test_rebuild_is_deterministic(self):
        inst = random_instance(24, 120, 0)
        i1 = NeighborIndex(inst)
        i2 = build_index(inst)
        for source in (0, 3, 57, 119):
            assert i1.nearest_beyond(source, 6, MIN_KEY) == i2.nearest_beyond(source, 6, MIN_KEY)


class TestExhaustiveEnumeration:
    def enumerate_all(self, inst, index, source, b):
        theta = MIN_KEY
        seen = []
        while True:
            batch = index.nearest_beyond(source, b, theta)
            if not batch:
                return seen
            seen.extend(batch)
            theta = tie_key(inst, source, batch[-1])

    @pytest.mark.parametrize("b", [1, 2, 3, 7, 16])
    def test_scatter_enumeration(self, b):
        inst = random_instance(25, 150, 0)
        index = NeighborIndex(inst)
        for source in (0, 50, 149):
            seen = self.enumerate_all(inst, index, source, b)
            assert len(seen) == 149
            assert sorted(seen) == [v for v in range(150) if v != source]
            keys = [tie_key(inst, source, v) for v in seen]
            assert keys == sorted(keys)

    @pytest.mark.parametrize("b", [1, 3, 10])
    def test_grid_enumeration_with_ties(self, b):
        # Grids maximize equidistant pairs; the id tiebreak must keep the
        # enumeration exhaustive and duplicate-free.
        inst = grid_instance(12)
        index = NeighborIndex(inst)
        n = inst.n
        for source in (0, n // 2, n - 1):
            seen = self.enumerate_all(inst, index, source, b)
            assert len(seen) == n - 1
            assert len(set(seen)) == n - 1


class TestWithinRadius:
    def test_matches_brute_force(self):
        inst = random_instance(26, 300, 0)
        index = NeighborIndex(inst)
        locs = inst.locations
        rng = stream(10, "radius")
        for _ in range(100):
            source = rng.randrange(300)
            r = rng.uniform(0.01, 0.5)
            got = index.within_radius(source, r)
            want = sorted(
                (v for v in range(300) if v != source and math.dist(locs[source], locs[v]) <= r),
                key=lambda v: (math.dist(locs[source], locs[v]), v),
            )
            assert got == want

    def test_radius_positive(self):
        inst = line_instance()
        index = NeighborIndex(inst)
        with pytest.raises(ValueError):
            index.within_radius(0, 0.0)
