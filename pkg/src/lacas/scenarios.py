"""Seeded generators for the eight benchmark families.

Every family is deterministic given (family, seed): the same pair always
yields a byte-identical instance file.  Random generation can produce
unsolvable instances; that is intentional and the harness records it.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from . import scenario_config as cfg
from .geometry import OBSTACLE_BOUND, Point, ProblemInstance, Segment
from .instance_io import ManifestEntry, save_instance, write_manifest
from .rng import SplitMix64, stream

FAMILIES = (
    "scatter-1k",
    "scatter-10k",
    "grid-10k",
    "plus-2k",
    "trap",
    "zigzag",
    "gateways",
    "split",
)


@dataclass
class ScenarioSpec:
    family: str
    seed: int
    # Optional overrides for desk-scale experiments; None keeps the frozen default.
    n: int | None = None
    obstacle_count: int | None = None
    obstacle_length: tuple[float, float] | None = None
    dust_count: int | None = None  # scatter/grid only: near-point cost segments


def _fresh_points(rng: SplitMix64, count: int, taken: set, sample) -> list[Point]:
    pts = []
    while len(pts) < count:
        p = sample(rng)
        key = (p[0], p[1])
        if key in taken:
            continue
        taken.add(key)
        pts.append(p)
    return pts


def _uniform_point(rng: SplitMix64) -> Point:
    return Point(rng.random(), rng.random())


def _too_close(ax, ay, bx, by, px, py, radius) -> bool:
    # Distance from point p to segment a-b below radius?
    dx, dy = bx - ax, by - ay
    t = ((px - ax) * dx + (py - ay) * dy) / (dx * dx + dy * dy)
    t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
    return math.hypot(ax + t * dx - px, ay + t * dy - py) < radius


def _random_segments(
    rng: SplitMix64,
    count: int,
    length_range: tuple[float, float],
    keep_clear: list[tuple[float, float]] = (),
    clear_radius: float = 0.0,
) -> list[Segment]:
    """Random obstacle segments; any that intrude on a keep-clear disk are
    resampled so start and goal always keep a usable local neighborhood."""
    lo, hi = -OBSTACLE_BOUND, 1.0 + OBSTACLE_BOUND
    out: list[Segment] = []
    while len(out) < count:
        cx, cy = rng.random(), rng.random()
        angle = rng.uniform(0.0, 2.0 * math.pi)
        half = rng.uniform(*length_range) / 2.0
        ax, ay = cx - half * math.cos(angle), cy - half * math.sin(angle)
        bx, by = cx + half * math.cos(angle), cy + half * math.sin(angle)
        if not (lo <= ax <= hi and lo <= ay <= hi and lo <= bx <= hi and lo <= by <= hi):
            continue
        if clear_radius > 0.0 and any(
            _too_close(ax, ay, bx, by, px, py, clear_radius) for px, py in keep_clear
        ):
            continue
        out.append(Segment(Point(ax, ay), Point(bx, by)))
    return out


def _corner_instance(
    rng: SplitMix64,
    n: int,
    obstacles: list[Segment],
    start_xy=cfg.CORNER_START,
    goal_xy=cfg.CORNER_GOAL,
) -> ProblemInstance:
    start = Point(*start_xy)
    goal = Point(*goal_xy)
    taken = {(start.x, start.y), (goal.x, goal.y)}
    pts = [start, goal] + _fresh_points(rng, n - 2, taken, _uniform_point)
    return ProblemInstance(pts, 0, 1, obstacles)


def _scatter_obstacles(rng: SplitMix64, spec: ScenarioSpec, defaults: dict,
                       keep_clear: list) -> list[Segment]:
    walls = spec.obstacle_count if spec.obstacle_count is not None else defaults["wall_count"]
    length = spec.obstacle_length or defaults["wall_length"]
    dust = spec.dust_count if spec.dust_count is not None else defaults["dust_count"]
    obstacles = _random_segments(
        rng, walls, length,
        keep_clear=keep_clear, clear_radius=defaults["clear_radius"],
    )
    obstacles += _random_segments(rng, dust, defaults["dust_length"])
    return obstacles


def _gen_scatter(spec: ScenarioSpec, defaults: dict) -> ProblemInstance:
    rng = stream(spec.seed, spec.family)
    n = spec.n or defaults["n"]
    obstacles = _scatter_obstacles(
        rng, spec, defaults, [cfg.CORNER_START, cfg.CORNER_GOAL]
    )
    return _corner_instance(rng, n, obstacles)


def _gen_grid(spec: ScenarioSpec) -> ProblemInstance:
    rng = stream(spec.seed, spec.family)
    res = cfg.GRID["resolution"]
    side = round(1.0 / res) + 1
    pts = [Point(i * res, j * res) for j in range(side) for i in range(side)]
    obstacles = _scatter_obstacles(rng, spec, cfg.GRID, [(0.0, 0.0), (1.0, 1.0)])
    # Bottom-left corner to top-right corner.
    return ProblemInstance(pts, 0, len(pts) - 1, obstacles)


def _gen_plus(spec: ScenarioSpec) -> ProblemInstance:
    rng = stream(spec.seed, spec.family)
    n = spec.n or cfg.PLUS["n"]
    count = spec.obstacle_count if spec.obstacle_count is not None else cfg.PLUS["plus_count"]
    arm = cfg.PLUS["arm_length"]
    obstacles: list[Segment] = []
    for _ in range(count):
        cx = rng.uniform(arm, 1.0 - arm)
        cy = rng.uniform(arm, 1.0 - arm)
        obstacles.append(Segment(Point(cx - arm, cy), Point(cx + arm, cy)))
        obstacles.append(Segment(Point(cx, cy - arm), Point(cx, cy + arm)))
    return _corner_instance(rng, n, obstacles)


def _walled_instance(
    rng: SplitMix64,
    n: int,
    walls: list[Segment],
    start_xy,
    goal_xy,
    sample=_uniform_point,
) -> ProblemInstance:
    start = Point(*start_xy)
    goal = Point(*goal_xy)
    taken = {(start.x, start.y), (goal.x, goal.y)}
    pts = [start, goal] + _fresh_points(rng, n - 2, taken, sample)
    return ProblemInstance(pts, 0, 1, walls)


def _gen_trap(spec: ScenarioSpec) -> ProblemInstance:
    rng = stream(spec.seed, spec.family)
    walls = [Segment(Point(*a), Point(*b)) for a, b in cfg.TRAP["walls"]]
    return _walled_instance(rng, spec.n or cfg.TRAP["n"], walls, cfg.TRAP["start"], cfg.TRAP["goal"])


def _gen_zigzag(spec: ScenarioSpec) -> ProblemInstance:
    rng = stream(spec.seed, spec.family)
    count = cfg.ZIGZAG["wall_count"]
    reach = cfg.ZIGZAG["wall_reach"]
    lo = -OBSTACLE_BOUND / 2.0
    hi = 1.0 + OBSTACLE_BOUND / 2.0
    walls = []
    for k in range(1, count + 1):
        y = k / (count + 1)
        if k % 2 == 1:
            walls.append(Segment(Point(lo, y), Point(reach, y)))
        else:
            walls.append(Segment(Point(1.0 - reach, y), Point(hi, y)))
    return _walled_instance(
        rng, spec.n or cfg.ZIGZAG["n"], walls, cfg.ZIGZAG["start"], cfg.ZIGZAG["goal"]
    )


def _gen_gateways(spec: ScenarioSpec) -> ProblemInstance:
    rng = stream(spec.seed, spec.family)
    count = cfg.GATEWAYS["gate_count"]
    thick = cfg.GATEWAYS["gate_depth"]
    half = cfg.GATEWAYS["gap_half_height"]
    g_lo, g_hi = cfg.GATEWAYS["gap_range"]
    lo = -OBSTACLE_BOUND / 2.0
    hi = 1.0 + OBSTACLE_BOUND / 2.0
    walls = []
    for k in range(1, count + 1):
        gap = rng.uniform(g_lo, g_hi)
        for x in (k / (count + 1) - thick / 2.0, k / (count + 1) + thick / 2.0):
            walls.append(Segment(Point(x, lo), Point(x, gap - half)))
            walls.append(Segment(Point(x, gap + half), Point(x, hi)))
    return _walled_instance(
        rng, spec.n or cfg.GATEWAYS["n"], walls, cfg.GATEWAYS["start"], cfg.GATEWAYS["goal"]
    )


def _gen_split(spec: ScenarioSpec) -> ProblemInstance:
    rng = stream(spec.seed, spec.family)
    band_lo, band_hi = cfg.SPLIT["band"]
    half = cfg.SPLIT["gap_half_height"]
    g_lo, g_hi = cfg.SPLIT["gap_range"]
    lo = -OBSTACLE_BOUND / 2.0
    hi = 1.0 + OBSTACLE_BOUND / 2.0
    gap = rng.uniform(g_lo, g_hi)
    walls = []
    for x in cfg.SPLIT["wall_xs"]:
        walls.append(Segment(Point(x, lo), Point(x, gap - half)))
        walls.append(Segment(Point(x, gap + half), Point(x, hi)))

    zone_width = 1.0 - (band_hi - band_lo)

    def zone_point(r: SplitMix64) -> Point:
        x = r.random() * zone_width
        if x >= band_lo:
            x += band_hi - band_lo
        return Point(x, r.random())

    return _walled_instance(
        rng, spec.n or cfg.SPLIT["n"], walls, cfg.SPLIT["start"], cfg.SPLIT["goal"],
        sample=zone_point,
    )


def generate_instance(spec: ScenarioSpec) -> ProblemInstance:
    family = spec.family
    if family in cfg.SCATTER:
        return _gen_scatter(spec, cfg.SCATTER[family])
    if family == "grid-10k":
        return _gen_grid(spec)
    if family == "plus-2k":
        return _gen_plus(spec)
    if family == "trap":
        return _gen_trap(spec)
    if family == "zigzag":
        return _gen_zigzag(spec)
    if family == "gateways":
        return _gen_gateways(spec)
    if family == "split":
        return _gen_split(spec)
    raise ValueError(f"unknown scenario family {family!r}; known: {', '.join(FAMILIES)}")


def generate_corpus(
    family: str,
    seeds: list[int],
    out_dir: str,
    manifest_name: str = "manifest.txt",
    **overrides,
) -> list[ManifestEntry]:
    """Write one instance file per seed plus a manifest; returns the entries."""
    os.makedirs(out_dir, exist_ok=True)
    entries = []
    for seed in seeds:
        inst = generate_instance(ScenarioSpec(family, seed, **overrides))
        name = f"{family}-{seed}.txt"
        save_instance(inst, os.path.join(out_dir, name))
        entries.append(ManifestEntry(family, seed, name))
    write_manifest(entries, os.path.join(out_dir, manifest_name))
    return entries
