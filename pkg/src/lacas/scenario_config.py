"""Frozen scenario parameters.

The benchmark families fix obstacle shapes and start/goal placement here and
randomize only what the family calls for (point placement, obstacle
placement, gap positions).  Bump CONFIG_VERSION whenever any value below
changes, since every generated corpus depends on them.

Scatter calibration notes.  Two obstacle populations are drawn: long
"walls" that create detours and trap pockets, and near-point "dust" segments
whose only practical effect is to make every oracle call pay a longer
bounding-box scan.  Walls are kept near the stick-percolation edge (total
blocking length is what fragments the location graph), while dust raises the
cost of one connectivity query enough that exhaustively probing the whole
graph overruns a 30 s budget, the regime where successor ordering decides
which runs finish.  Tuned once on this implementation and frozen.
"""

CONFIG_VERSION = "2"

SCATTER = {
    "scatter-1k": {
        "n": 1000,
        "wall_count": 45,
        "wall_length": (0.10, 0.40),
        "dust_count": 12000,
        "dust_length": (0.0002, 0.001),
        "clear_radius": 0.08,
    },
    "scatter-10k": {
        "n": 10000,
        "wall_count": 95,
        "wall_length": (0.07, 0.28),
        "dust_count": 1500,
        "dust_length": (0.0002, 0.001),
        "clear_radius": 0.08,
    },
}

# Lattice with this spacing over [0, 1]^2, inclusive of both edges.
GRID = {
    "resolution": 0.01,
    "wall_count": 95,
    "wall_length": (0.07, 0.28),
    "dust_count": 1500,
    "dust_length": (0.0002, 0.001),
    "clear_radius": 0.08,
}

# Plus-shaped obstacles: two perpendicular arms crossing at the center.
PLUS = {
    "n": 2000,
    "plus_count": 14,
    "arm_length": 0.11,
}

# Corner start/goal used by the fields above.
CORNER_START = (0.02, 0.02)
CORNER_GOAL = (0.98, 0.98)

# Basket open toward the start: the straight route enters the mouth and hits
# the closed back, so goal-distance greed gets trapped inside.
TRAP = {
    "n": 1000,
    "start": (0.5, 0.05),
    "goal": (0.5, 0.95),
    "walls": [
        ((0.3, 0.35), (0.3, 0.70)),
        ((0.3, 0.70), (0.7, 0.70)),
        ((0.7, 0.70), (0.7, 0.35)),
    ],
}

# Alternating walls anchored to the left/right edges; progress toward the
# goal repeatedly requires moving away from it.
ZIGZAG = {
    "n": 1000,
    "start": (0.05, 0.05),
    "goal": (0.95, 0.95),
    "wall_count": 5,
    "wall_reach": 0.72,  # how far each wall extends across the workspace
}

# Five gates, each a corridor deeper than a typical sampling step: two
# parallel full-height walls pierced by one aligned narrow gap at a seeded
# random height.  Preset locations fall inside the corridors and let the
# graph hop through; samplers must land fresh points in the sliver first.
GATEWAYS = {
    "n": 1000,
    "start": (0.02, 0.5),
    "goal": (0.98, 0.5),
    "gate_count": 5,
    "gate_depth": 0.18,
    "gap_half_height": 0.03,
    "gap_range": (0.1, 0.9),
}

# Two point zones separated by an empty band; the band is fenced by several
# walls sharing one aligned gap, so crossing needs a single long edge.
SPLIT = {
    "n": 1000,
    "start": (0.05, 0.05),
    "goal": (0.95, 0.95),
    "band": (0.42, 0.58),
    "wall_xs": (0.46, 0.50, 0.54),
    "gap_half_height": 0.04,
    "gap_range": (0.2, 0.8),
}
