"""Command-line harness.

Subcommands:
    gen     generate a seeded instance corpus plus manifest
    run     run algorithms over a manifest, write metrics CSV
    sweep   run the lazy search across batch sizes, write records + summary
    render  draw an instance (and optional solution dumps) to SVG

Individual run failures are recorded in the CSV, not fatal; the exit code is
nonzero only for harness-level errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from .bench import (
    batch_size_sweep,
    emit_csv,
    emit_summary_csv,
    aggregate,
    parse_algo_spec,
    run_benchmark,
)
from .instance_io import (
    SolutionDump,
    format_solution,
    load_instance,
    parse_solution,
)
from .render import render_svg
from .scenarios import FAMILIES, generate_corpus


def _parse_seed_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(s) for s in text.split(",")]


def _cmd_gen(args) -> int:
    entries = generate_corpus(args.family, _parse_seed_range(args.seeds), args.out)
    print(f"wrote {len(entries)} instances to {args.out}")
    return 0


def _cmd_run(args) -> int:
    specs = [parse_algo_spec(a) for a in args.algo]
    records = run_benchmark(
        args.manifest, specs, timeout=args.timeout, workers=args.workers,
        b=args.b, base_seed=args.seed,
    )
    emit_csv(records, args.csv)
    if args.summary:
        emit_summary_csv(aggregate(records), args.summary)
    if args.solutions:
        os.makedirs(args.solutions, exist_ok=True)
        for rec in records:
            if rec.solved and rec.path:
                name = f"run-{rec.run_id}-{rec.scenario}-{rec.seed}-{rec.algorithm}.txt"
                dump = SolutionDump(
                    path=rec.path, cost=rec.final_cost or 0.0,
                    optimal=rec.proven_optimal, improvements=rec.improvements,
                )
                with open(os.path.join(args.solutions, name), "w", encoding="utf-8") as fh:
                    fh.write(format_solution(dump))
    solved = sum(1 for r in records if r.solved)
    print(f"{len(records)} runs, {solved} solved -> {args.csv}")
    return 0


def _cmd_sweep(args) -> int:
    b_values = [int(b) for b in args.b.split(",")]
    spec = parse_algo_spec(args.algo)
    records, summary = batch_size_sweep(
        args.manifest, b_values, timeout=args.timeout, workers=args.workers,
        spec=spec, base_seed=args.seed,
    )
    emit_csv(records, args.csv)
    stem, ext = os.path.splitext(args.csv)
    emit_summary_csv(summary, stem + ".summary" + (ext or ".csv"))
    for row in summary:
        print(
            f"b={row['b']:>5}  solved={row['solved']:>3}/{row['runs']}  "
            f"median #connect={row['connect_calls_median_solved']}  "
            f"(common basis: {row['connect_calls_median_common']})"
        )
    return 0


def _cmd_render(args) -> int:
    instance = load_instance(args.instance)
    paths = []
    for i, sol_path in enumerate(args.solution or []):
        with open(sol_path, "r", encoding="utf-8") as fh:
            dump = parse_solution(fh.read())
        label = os.path.splitext(os.path.basename(sol_path))[0]
        paths.append((f"{label} (cost {dump.cost:.3f})", dump.path))
    render_svg(instance, paths=paths, out_path=args.out)
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lacas", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a seeded instance corpus")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--seeds", required=True, help="range 'A..B' (inclusive) or comma list")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("run", help="run algorithms over a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--algo", action="append", required=True,
                   help="algorithm spec, e.g. lacas | lacas*,no-rolling | astar-k,k=5; repeatable")
    p.add_argument("--b", type=int, default=10, help="batch size for the lazy searches")
    p.add_argument("--timeout", type=float, default=30.0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help="base seed for randomized choices")
    p.add_argument("--csv", required=True)
    p.add_argument("--summary", help="optional aggregated-stats CSV")
    p.add_argument("--solutions", help="optional directory for per-run solution dumps")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("sweep", help="batch-size sweep for the lazy search")
    p.add_argument("--manifest", required=True)
    p.add_argument("--b", required=True, help="comma list of batch sizes")
    p.add_argument("--algo", default="lacas", help="algorithm spec to sweep")
    p.add_argument("--timeout", type=float, default=30.0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", required=True)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("render", help="render an instance (and solutions) to SVG")
    p.add_argument("--instance", required=True)
    p.add_argument("--solution", action="append", help="solution dump file; repeatable")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
