"""Anytime pathfinding on oracle-defined graphs with lazy successor generation.

The package bundles the search itself, the spatial index it queries, a set
of classical baselines sharing the same oracle, seeded scenario generators,
and a benchmark harness with CSV metrics and SVG rendering.
"""

from .geometry import (
    MIN_KEY,
    CallCounter,
    Point,
    ProblemInstance,
    Segment,
    connect,
    dist,
    segments_intersect,
    tie_key,
)
from .neighbors import NeighborIndex, brute_force_neighbors, build_index
from .search import (
    SearchBudget,
    SearchConfig,
    SearchOutcome,
    backtrack,
    lacas_search,
    path_cost,
    validate_path,
)
from .baselines import (
    AllSuccessors,
    KNearest,
    Radius,
    SBMPParams,
    astar_search,
    dfs_search,
    gbfs_search,
    pe_search,
    rrt_connect_search,
    rrt_search,
)
from .scenarios import FAMILIES, ScenarioSpec, generate_corpus, generate_instance
from .instance_io import load_instance, parse_instance, save_instance, serialize_instance

__all__ = [
    "MIN_KEY",
    "CallCounter",
    "Point",
    "ProblemInstance",
    "Segment",
    "connect",
    "dist",
    "segments_intersect",
    "tie_key",
    "NeighborIndex",
    "brute_force_neighbors",
    "build_index",
    "SearchBudget",
    "SearchConfig",
    "SearchOutcome",
    "backtrack",
    "lacas_search",
    "path_cost",
    "validate_path",
    "AllSuccessors",
    "KNearest",
    "Radius",
    "SBMPParams",
    "astar_search",
    "dfs_search",
    "gbfs_search",
    "pe_search",
    "rrt_connect_search",
    "rrt_search",
    "FAMILIES",
    "ScenarioSpec",
    "generate_corpus",
    "generate_instance",
    "load_instance",
    "parse_instance",
    "save_instance",
    "serialize_instance",
]
