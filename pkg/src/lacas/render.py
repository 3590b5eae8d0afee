"""SVG rendering of instances, explored search trees, and solution paths.

Hand-rolled SVG text: the workspace square, gray obstacle lines, small dots
for locations, fine lines for explored arcs, bold colored polylines for
solutions, a circle for the start and a star for the goal.
"""

from __future__ import annotations

import math

from .geometry import Point, ProblemInstance
from .search import SearchSnapshot

_SIZE = 640
_MARGIN = 20
_SCALE = _SIZE - 2 * _MARGIN

PATH_COLORS = ("#2ca02c", "#1f77b4", "#d62728", "#9467bd", "#ff7f0e", "#17becf")


def _sx(x: float) -> float:
    return _MARGIN + x * _SCALE


def _sy(y: float) -> float:
    # SVG y grows downward; the workspace y grows upward.
    return _MARGIN + (1.0 - y) * _SCALE


def _star(cx: float, cy: float, r: float) -> str:
    pts = []
    for i in range(10):
        rad = r if i % 2 == 0 else r * 0.45
        ang = -math.pi / 2 + i * math.pi / 5
        pts.append(f"{cx + rad * math.cos(ang):.2f},{cy + rad * math.sin(ang):.2f}")
    return " ".join(pts)


def render_svg(
    instance: ProblemInstance,
    paths: list[tuple[str, list]] | None = None,
    snapshot: SearchSnapshot | None = None,
    out_path: str | None = None,
) -> str:
    """Render to SVG text; paths are (label, location ids or Points) pairs."""
    locs = instance.locations
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
        f'viewBox="0 0 {_SIZE} {_SIZE}">',
        f'<rect width="{_SIZE}" height="{_SIZE}" fill="white"/>',
        f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{_SCALE}" height="{_SCALE}" '
        'fill="none" stroke="#ccc" stroke-width="1"/>',
    ]
    for (ax, ay), (bx, by) in instance.obstacles:
        parts.append(
            f'<line x1="{_sx(ax):.2f}" y1="{_sy(ay):.2f}" x2="{_sx(bx):.2f}" '
            f'y2="{_sy(by):.2f}" stroke="#888" stroke-width="2.5"/>'
        )
    if snapshot is not None:
        for u, v in snapshot.edges:
            (ux, uy), (vx, vy) = locs[u], locs[v]
            parts.append(
                f'<line x1="{_sx(ux):.2f}" y1="{_sy(uy):.2f}" x2="{_sx(vx):.2f}" '
                f'y2="{_sy(vy):.2f}" stroke="#9ab0d0" stroke-width="0.5"/>'
            )
    for x, y in locs:
        parts.append(f'<circle cx="{_sx(x):.2f}" cy="{_sy(y):.2f}" r="1.2" fill="#444"/>')
    labels = []
    for idx, (label, path) in enumerate(paths or []):
        color = PATH_COLORS[idx % len(PATH_COLORS)]
        coords = []
        for item in path:
            p: Point = locs[item] if isinstance(item, int) else item
            coords.append(f"{_sx(p[0]):.2f},{_sy(p[1]):.2f}")
        parts.append(
            f'<polyline points="{" ".join(coords)}" fill="none" stroke="{color}" '
            'stroke-width="2.5"/>'
        )
        labels.append((label, color))
    sx, sy = locs[instance.start]
    gx, gy = locs[instance.goal]
    parts.append(
        f'<circle cx="{_sx(sx):.2f}" cy="{_sy(sy):.2f}" r="7" fill="none" '
        'stroke="#222" stroke-width="2"/>'
    )
    parts.append(
        f'<polygon points="{_star(_sx(gx), _sy(gy), 9)}" fill="#f2b01e" '
        'stroke="#222" stroke-width="1"/>'
    )
    for i, (label, color) in enumerate(labels):
        parts.append(
            f'<text x="{_MARGIN + 6}" y="{_MARGIN + 16 + 16 * i}" font-size="13" '
            f'fill="{color}">{label}</text>'
        )
    parts.append("</svg>")
    svg = "\n".join(parts) + "\n"
    if out_path is not None:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(svg)
    return svg
