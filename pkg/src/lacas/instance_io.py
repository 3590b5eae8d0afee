"""Text formats: instance files, corpus manifests, and solution dumps.

Instance format (one record per line, `#` starts a comment):

    n <count>
    loc <x> <y>            # count lines, ids assigned in order from 0
    start <id>
    goal <id>
    obst <x1> <y1> <x2> <y2>
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .geometry import Point, ProblemInstance, Segment


class InstanceFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def serialize_instance(instance: ProblemInstance) -> str:
    out = [f"n {instance.n}"]
    for x, y in instance.locations:
        out.append(f"loc {x!r} {y!r}")
    out.append(f"start {instance.start}")
    out.append(f"goal {instance.goal}")
    for (ax, ay), (bx, by) in instance.obstacles:
        out.append(f"obst {ax!r} {ay!r} {bx!r} {by!r}")
    return "\n".join(out) + "\n"


def _floats(parts: list[str], want: int, lineno: int) -> list[float]:
    if len(parts) != want:
        raise InstanceFormatError(f"expected {want} fields, got {len(parts)}", lineno)
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise InstanceFormatError(f"bad numeric literal in {parts!r}", lineno) from None


def parse_instance(text: str) -> ProblemInstance:
    n: int | None = None
    locations: list[Point] = []
    start: int | None = None
    goal: int | None = None
    obstacles: list[Segment] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *rest = line.split()
        if tag == "n":
            if len(rest) != 1 or not rest[0].isdigit():
                raise InstanceFormatError("n needs one integer count", lineno)
            n = int(rest[0])
        elif tag == "loc":
            x, y = _floats(rest, 2, lineno)
            locations.append(Point(x, y))
        elif tag == "start":
            if len(rest) != 1 or not rest[0].isdigit():
                raise InstanceFormatError("start needs one id", lineno)
            start = int(rest[0])
        elif tag == "goal":
            if len(rest) != 1 or not rest[0].isdigit():
                raise InstanceFormatError("goal needs one id", lineno)
            goal = int(rest[0])
        elif tag == "obst":
            x1, y1, x2, y2 = _floats(rest, 4, lineno)
            obstacles.append(Segment(Point(x1, y1), Point(x2, y2)))
        else:
            raise InstanceFormatError(f"unknown record {tag!r}", lineno)
    if n is None:
        raise InstanceFormatError("missing 'n' record")
    if len(locations) != n:
        raise InstanceFormatError(f"expected {n} loc records, found {len(locations)}")
    if start is None:
        raise InstanceFormatError("missing 'start' record")
    if goal is None:
        raise InstanceFormatError("missing 'goal' record")
    if not (0 <= start < n):
        raise InstanceFormatError(f"start id {start} out of range 0..{n - 1}")
    if not (0 <= goal < n):
        raise InstanceFormatError(f"goal id {goal} out of range 0..{n - 1}")
    try:
        return ProblemInstance(locations, start, goal, obstacles)
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from exc


def load_instance(path: str) -> ProblemInstance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def save_instance(instance: ProblemInstance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_instance(instance))


# --- corpus manifests -------------------------------------------------------

@dataclass
class ManifestEntry:
    family: str
    seed: int
    path: str  # resolved to an absolute path on read


def write_manifest(entries: list[ManifestEntry], path: str) -> None:
    """Append entries to a manifest, skipping duplicates already listed."""
    existing = set()
    if os.path.exists(path):
        for e in read_manifest(path):
            existing.add((e.family, e.seed, e.path))
    base = os.path.dirname(os.path.abspath(path))
    with open(path, "a", encoding="utf-8") as fh:
        for e in entries:
            resolved = e.path if os.path.isabs(e.path) else os.path.join(base, e.path)
            if (e.family, e.seed, os.path.normpath(resolved)) in existing:
                continue
            fh.write(f"{e.family} {e.seed} {e.path}\n")


def read_manifest(path: str) -> list[ManifestEntry]:
    base = os.path.dirname(os.path.abspath(path))
    entries = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise InstanceFormatError("manifest lines are '<family> <seed> <path>'", lineno)
            family, seed, rel = parts
            resolved = rel if os.path.isabs(rel) else os.path.join(base, rel)
            entries.append(ManifestEntry(family, int(seed), os.path.normpath(resolved)))
    return entries


# --- solution dumps ---------------------------------------------------------

@dataclass
class SolutionDump:
    path: list[int]
    cost: float
    optimal: bool
    improvements: list[tuple[float, int, float]] = field(default_factory=list)


def format_solution(dump: SolutionDump) -> str:
    out = ["path " + " ".join(str(i) for i in dump.path)]
    out.append(f"cost {dump.cost!r}")
    out.append(f"optimal {1 if dump.optimal else 0}")
    for t, it, cost in dump.improvements:
        out.append(f"improve {t!r} {it} {cost!r}")
    return "\n".join(out) + "\n"


def parse_solution(text: str) -> SolutionDump:
    path: list[int] | None = None
    cost: float | None = None
    optimal = False
    improvements: list[tuple[float, int, float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *rest = line.split()
        if tag == "path":
            path = [int(p) for p in rest]
        elif tag == "cost":
            cost = float(rest[0])
        elif tag == "optimal":
            optimal = rest[0] == "1"
        elif tag == "improve":
            improvements.append((float(rest[0]), int(rest[1]), float(rest[2])))
        else:
            raise InstanceFormatError(f"unknown record {tag!r}", lineno)
    if path is None or cost is None:
        raise InstanceFormatError("solution dump needs 'path' and 'cost' records")
    return SolutionDump(path, cost, optimal, improvements)
