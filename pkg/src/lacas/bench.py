"""Benchmark harness: run (algorithm x instance) grids under timeouts and
collect per-run metrics.

Metric conventions follow the solution-discovery view: `time_to_first` is
the elapsed time until the first solution, `first_cost` its cost,
`connect_calls` the number of oracle queries issued by the whole run, and
`iterations` the number of search iterations.  For the sampling-based
planners `connect_calls` counts segment collision queries, the closest
equivalent of the oracle.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from statistics import median

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
from .geometry import CallCounter, ProblemInstance
from .instance_io import ManifestEntry, load_instance, read_manifest
from .neighbors import NeighborIndex
from .rng import _fnv1a, _mix
from .search import SearchBudget, SearchConfig, SearchOutcome, lacas_search

GRAPH_ALGOS = ("lacas", "lacat", "pe", "astar", "astar-k", "astar-r",
               "gbfs", "gbfs-k", "gbfs-r", "dfs")
SBMP_ALGOS = ("rrt", "rrt-connect")


@dataclass(frozen=True)
class AlgoSpec:
    """Parsed `name[,flag|key=value]...` algorithm selector."""

    name: str
    anytime: bool = False
    sort_batch: bool = True
    reinsert: bool = True
    rolling: bool = True
    k: int = 10
    r: float = 0.1
    step: float = 0.1

    @property
    def label(self) -> str:
        flags = []
        if self.name in ("lacas", "lacat", "pe"):
            flags.append("sorted" if self.sort_batch else "random")
            if self.reinsert:
                flags.append("reinsert")
            if self.rolling:
                flags.append("rolling")
            if self.anytime:
                flags.append("anytime")
        elif self.name in ("astar-k", "gbfs-k"):
            flags.append(f"k={self.k}")
        elif self.name in ("astar-r", "gbfs-r"):
            flags.append(f"r={self.r}")
        elif self.name in SBMP_ALGOS:
            flags.append(f"step={self.step}")
        return "+".join(flags)


def parse_algo_spec(text: str) -> AlgoSpec:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("empty algorithm spec")
    name = parts[0]
    if name.endswith("*"):
        # 'lacas*' / 'lacat*' shorthand for the anytime variants
        name = name[:-1]
        opts = {"anytime": True}
    else:
        opts = {}
    if name not in GRAPH_ALGOS + SBMP_ALGOS:
        raise ValueError(f"unknown algorithm {name!r}")
    for tok in parts[1:]:
        if tok == "anytime":
            opts["anytime"] = True
        elif tok == "no-anytime":
            opts["anytime"] = False
        elif tok in ("sorted", "random"):
            opts["sort_batch"] = tok == "sorted"
        elif tok in ("reinsert", "no-reinsert"):
            opts["reinsert"] = tok == "reinsert"
        elif tok in ("rolling", "no-rolling"):
            opts["rolling"] = tok == "rolling"
        elif "=" in tok:
            key, val = tok.split("=", 1)
            if key == "k":
                opts["k"] = int(val)
            elif key == "r":
                opts["r"] = float(val)
            elif key == "step":
                opts["step"] = float(val)
            else:
                raise ValueError(f"unknown option {key!r}")
        else:
            raise ValueError(f"unknown flag {tok!r}")
    return AlgoSpec(name=name, **opts)


@dataclass
class RunRecord:
    run_id: int
    scenario: str
    seed: int
    algorithm: str
    flags: str
    b: int
    solved: bool
    time_to_first: float | None
    first_cost: float | None
    final_cost: float | None
    proven_optimal: bool
    connect_calls: int
    iterations: int
    outcome: str  # solution | no_solution | failure | error
    note: str = ""
    improvements: list[tuple[float, int, float]] = field(default_factory=list, repr=False)
    # Final path ids when the algorithm works on the location graph; not in the CSV.
    path: list[int] | None = field(default=None, repr=False, compare=False)


CSV_FIELDS = [
    "run_id", "scenario", "seed", "algorithm", "flags", "b", "solved",
    "time_to_first", "first_cost", "final_cost", "proven_optimal",
    "connect_calls", "iterations", "outcome", "note",
]


def run_seed(instance_seed: int, algo_label: str, base_seed: int) -> int:
    """Deterministic per-run seed for randomized algorithm choices."""
    return _mix(_mix(instance_seed) ^ _fnv1a(algo_label) ^ _mix(base_seed)) & 0x7FFFFFFF


def execute(
    instance: ProblemInstance,
    spec: AlgoSpec,
    b: int,
    timeout: float | None,
    seed: int = 0,
    index: NeighborIndex | None = None,
) -> tuple[SearchOutcome, int]:
    """Run one algorithm on one instance; returns (outcome, connect calls)."""
    counter = CallCounter()
    budget = SearchBudget(time_limit=timeout)
    name = spec.name
    if name in ("lacas", "lacat", "pe"):
        config = SearchConfig(
            b=b,
            sort_batch=spec.sort_batch,
            reinsert=spec.reinsert,
            rolling=spec.rolling,
            grandparent=(name == "lacat"),
            anytime=spec.anytime,
            budget=budget,
            seed=seed,
        )
        if name == "pe":
            outcome = pe_search(instance, config, counter)
        else:
            index = index or NeighborIndex(instance)
            outcome = lacas_search(instance, index, config, counter)
    elif name in ("astar", "astar-k", "astar-r", "gbfs", "gbfs-k", "gbfs-r"):
        if name.endswith("-k"):
            mode = KNearest(spec.k)
        elif name.endswith("-r"):
            mode = Radius(spec.r)
        else:
            mode = AllSuccessors()
        index = index or NeighborIndex(instance)
        fn = astar_search if name.startswith("astar") else gbfs_search
        outcome = fn(instance, index, mode, counter, budget)
    elif name == "dfs":
        outcome = dfs_search(instance, counter, budget)
    elif name == "rrt":
        outcome = rrt_search(instance, SBMPParams(step=spec.step, seed=seed), counter, budget)
    elif name == "rrt-connect":
        outcome = rrt_connect_search(
            instance, SBMPParams(step=spec.step, seed=seed), counter, budget
        )
    else:
        raise ValueError(f"unknown algorithm {name!r}")
    return outcome, counter.value


def _record_from_outcome(
    run_id: int,
    entry: ManifestEntry,
    spec: AlgoSpec,
    b: int,
    outcome: SearchOutcome,
    connects: int,
) -> RunRecord:
    first = outcome.events[0] if outcome.events else None
    return RunRecord(
        run_id=run_id,
        scenario=entry.family,
        seed=entry.seed,
        algorithm=spec.name,
        flags=spec.label,
        b=b,
        solved=outcome.kind == "solution",
        time_to_first=first[0] if first else None,
        first_cost=first[2] if first else None,
        final_cost=outcome.cost,
        proven_optimal=outcome.proven_optimal,
        connect_calls=connects,
        iterations=outcome.iterations,
        outcome=outcome.kind,
        note=outcome.reason or "",
        improvements=list(outcome.events),
        path=list(outcome.path) if outcome.path is not None else None,
    )


def _run_task(args) -> RunRecord:
    run_id, entry, spec, b, timeout, base_seed = args
    try:
        instance = load_instance(entry.path)
    except (OSError, ValueError) as exc:
        return RunRecord(
            run_id=run_id, scenario=entry.family, seed=entry.seed,
            algorithm=spec.name, flags=spec.label, b=b, solved=False,
            time_to_first=None, first_cost=None, final_cost=None,
            proven_optimal=False, connect_calls=0, iterations=0,
            outcome="error", note=str(exc),
        )
    seed = run_seed(entry.seed, f"{spec.name}|{spec.label}|b={b}", base_seed)
    outcome, connects = execute(instance, spec, b, timeout, seed)
    return _record_from_outcome(run_id, entry, spec, b, outcome, connects)


def run_benchmark(
    manifest_path: str,
    algo_specs: list[AlgoSpec],
    timeout: float | None = 30.0,
    workers: int = 1,
    b: int = 10,
    base_seed: int = 0,
) -> list[RunRecord]:
    """One record per (manifest entry, algorithm spec), in task order."""
    entries = read_manifest(manifest_path)
    tasks = []
    run_id = 0
    for entry in entries:
        for spec in algo_specs:
            tasks.append((run_id, entry, spec, b, timeout, base_seed))
            run_id += 1
    if workers <= 1:
        return [_run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_task, tasks))


# --- CSV --------------------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_csv(records: list[RunRecord], path: str) -> None:
    """Main CSV plus a sibling `<stem>.improvements.csv` keyed by run_id."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_FIELDS)
        for rec in records:
            writer.writerow([_fmt(getattr(rec, name)) for name in CSV_FIELDS])
    stem, _ = os.path.splitext(path)
    with open(stem + ".improvements.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["run_id", "t", "iteration", "cost"])
        for rec in records:
            for t, it, cost in rec.improvements:
                writer.writerow([rec.run_id, repr(t), it, repr(cost)])


def read_csv(path: str) -> list[RunRecord]:
    def opt_float(s: str) -> float | None:
        return float(s) if s else None

    records = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            records.append(RunRecord(
                run_id=int(row["run_id"]),
                scenario=row["scenario"],
                seed=int(row["seed"]),
                algorithm=row["algorithm"],
                flags=row["flags"],
                b=int(row["b"]),
                solved=row["solved"] == "1",
                time_to_first=opt_float(row["time_to_first"]),
                first_cost=opt_float(row["first_cost"]),
                final_cost=opt_float(row["final_cost"]),
                proven_optimal=row["proven_optimal"] == "1",
                connect_calls=int(row["connect_calls"]),
                iterations=int(row["iterations"]),
                outcome=row["outcome"],
                note=row["note"],
            ))
    stem, _ = os.path.splitext(path)
    imp_path = stem + ".improvements.csv"
    if os.path.exists(imp_path):
        by_id = {rec.run_id: rec for rec in records}
        with open(imp_path, "r", encoding="utf-8", newline="") as fh:
            for row in csv.DictReader(fh):
                rec = by_id.get(int(row["run_id"]))
                if rec is not None:
                    rec.improvements.append(
                        (float(row["t"]), int(row["iteration"]), float(row["cost"]))
                    )
    return records


# --- aggregation ------------------------------------------------------------

def quantile(values: list[float], q: float) -> float:
    """Linear-interpolation quantile over a non-empty sample."""
    xs = sorted(values)
    if len(xs) == 1:
        return xs[0]
    pos = q * (len(xs) - 1)
    lo = int(pos)
    hi = min(lo + 1, len(xs) - 1)
    frac = pos - lo
    return xs[lo] * (1.0 - frac) + xs[hi] * frac


SUMMARY_METRICS = ("time_to_first", "first_cost", "final_cost", "connect_calls", "iterations")


def aggregate(records: list[RunRecord]) -> list[dict]:
    """Boxplot-style stats per (scenario, algorithm, flags, b) over solved runs."""
    groups: dict[tuple, list[RunRecord]] = {}
    for rec in records:
        groups.setdefault((rec.scenario, rec.algorithm, rec.flags, rec.b), []).append(rec)
    out = []
    for key in sorted(groups):
        recs = groups[key]
        solved = [r for r in recs if r.solved]
        row = {
            "scenario": key[0], "algorithm": key[1], "flags": key[2], "b": key[3],
            "runs": len(recs), "solved": len(solved),
            "solved_pct": 100.0 * len(solved) / len(recs),
        }
        for metric in SUMMARY_METRICS:
            vals = [float(getattr(r, metric)) for r in solved if getattr(r, metric) is not None]
            if vals:
                row[f"{metric}_median"] = median(vals)
                row[f"{metric}_q1"] = quantile(vals, 0.25)
                row[f"{metric}_q3"] = quantile(vals, 0.75)
                row[f"{metric}_mean"] = sum(vals) / len(vals)
            else:
                for suffix in ("median", "q1", "q3", "mean"):
                    row[f"{metric}_{suffix}"] = None
        out.append(row)
    return out


def emit_summary_csv(rows: list[dict], path: str) -> None:
    if not rows:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write("")
        return
    keys = list(rows[0].keys())
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(keys)
        for row in rows:
            writer.writerow([_fmt(row[k]) for k in keys])


# --- batch-size sweep -------------------------------------------------------

def batch_size_sweep(
    manifest_path: str,
    b_values: list[int],
    timeout: float | None = 30.0,
    workers: int = 1,
    spec: AlgoSpec | None = None,
    base_seed: int = 0,
) -> tuple[list[RunRecord], list[dict]]:
    """Run the lazy search across batch sizes.

    The summary reports, per b: solved count, the median connect_calls over
    that b's own solved runs, and the same median over the instances solved
    at every b (common basis; None when some b solved nothing at all).
    """
    spec = spec or AlgoSpec(name="lacas")
    records: list[RunRecord] = []
    for b in b_values:
        records.extend(run_benchmark(manifest_path, [spec], timeout, workers, b, base_seed))
    by_b: dict[int, dict[tuple, RunRecord]] = {}
    for rec in records:
        by_b.setdefault(rec.b, {})[(rec.scenario, rec.seed)] = rec
    common: set | None = None
    for b in b_values:
        solved_keys = {k for k, r in by_b[b].items() if r.solved}
        common = solved_keys if common is None else (common & solved_keys)
    common = common or set()
    summary = []
    for b in b_values:
        recs = by_b[b]
        solved = [r for r in recs.values() if r.solved]
        connects = [float(r.connect_calls) for r in solved]
        common_connects = [float(recs[k].connect_calls) for k in common]
        summary.append({
            "b": b,
            "runs": len(recs),
            "solved": len(solved),
            "solved_pct": 100.0 * len(solved) / len(recs) if recs else 0.0,
            "connect_calls_median_solved": median(connects) if connects else None,
            "common_solved": len(common),
            "connect_calls_median_common": median(common_connects) if common_connects else None,
        })
    return records, summary
