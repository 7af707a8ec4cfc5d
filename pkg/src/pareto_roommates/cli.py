"""Command-line entry point.

Exit codes for ``check`` and ``oracle``: 0 efficient, 1 inefficient,
2 bad input or usage.
"""

from __future__ import annotations

import argparse
import csv
import json
import statistics
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .checker import check
from .fileformat import ParseError, read_instance, render_instance
from .generate import bench_seed, random_instance, repair_irrational_pairs, serial_dictatorship
from .graph import build_graph, build_modified_graph, to_dot
from .model import ValidationError, Verdict
from .oracle import TooLarge, oracle_efficient

EXIT_EFFICIENT, EXIT_INEFFICIENT, EXIT_ERROR = 0, 1, 2

BENCH_COLUMNS = ("n", "rep", "elapsed_ms", "iterations", "verdict")


@dataclass(frozen=True)
class BenchRecord:
    n: int
    rep: int
    elapsed: float
    iterations: int
    verdict: bool

    def row(self) -> list:
        return [self.n, self.rep, f"{self.elapsed:.3f}", self.iterations, int(self.verdict)]


def _load(path: str):
    try:
        return read_instance(path)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _report(verdict: Verdict, args) -> int:
    if args.format == "json":
        print(json.dumps(verdict.to_dict()))
    else:
        print("efficient" if verdict.efficient else f"inefficient ({verdict.cause})")
        if args.witness and verdict.witness is not None:
            print(verdict.witness)
    return EXIT_EFFICIENT if verdict.efficient else EXIT_INEFFICIENT


def cmd_check(args) -> int:
    instance = _load(args.path)
    if args.dot:
        out = Path(args.dot)
        out.mkdir(parents=True, exist_ok=True)
        g = build_graph(instance)
        (out / "G.dot").write_text(to_dot(g, "G"))
        (out / "G_modified.dot").write_text(to_dot(build_modified_graph(g), "G_modified"))
    return _report(check(instance), args)


def cmd_oracle(args) -> int:
    instance = _load(args.path)
    efficient, dominator = oracle_efficient(instance)
    if efficient:
        verdict = Verdict(True)
    else:
        verdict = Verdict(False, dominator, "dominated")
    return _report(verdict, args)


def cmd_gen(args) -> int:
    if args.n < 3:
        raise ValueError("--n must be at least 3")
    instance = random_instance(args.n, args.seed, args.solo_prob)
    if args.no_irrational:
        instance = repair_irrational_pairs(instance)
    sys.stdout.write(render_instance(instance))
    return 0


def bench_instance(family: str, n: int, seed: int):
    instance = random_instance(n, seed)
    if family == "efficient":
        return serial_dictatorship(instance, seed)
    return repair_irrational_pairs(instance)


def run_bench(sizes, reps: int, seed: int, family: str = "dense") -> list[BenchRecord]:
    records = []
    for n in sizes:
        for rep in range(reps):
            instance = bench_instance(family, n, bench_seed(seed, n, rep))
            start = time.perf_counter()
            verdict = check(instance)
            elapsed = (time.perf_counter() - start) * 1e3
            records.append(BenchRecord(n, rep, elapsed, verdict.iterations, verdict.efficient))
    return records


def loglog_slope(records: list[BenchRecord]) -> float | None:
    """Least-squares slope of log(median elapsed) against log(n)."""
    by_size: dict[int, list[float]] = {}
    for r in records:
        by_size.setdefault(r.n, []).append(r.elapsed)
    if len(by_size) < 2:
        return None
    sizes = sorted(by_size)
    medians = [statistics.median(by_size[n]) for n in sizes]
    slope, _ = np.polyfit(np.log(sizes), np.log(medians), 1)
    return float(slope)


def cmd_bench(args) -> int:
    sizes = args.sizes
    if any(n < 3 for n in sizes) or args.reps < 1:
        raise ValueError("sizes must be at least 3 and --reps positive")
    records = run_bench(sizes, args.reps, args.seed, args.family)
    sink = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(sink)
        writer.writerow(BENCH_COLUMNS)
        writer.writerows(r.row() for r in records)
    finally:
        if args.out:
            sink.close()
    slope = loglog_slope(records)
    summary = sys.stdout if args.out else sys.stderr
    for n in sorted({r.n for r in records}):
        times = [r.elapsed for r in records if r.n == n]
        print(f"n={n} median_ms={statistics.median(times):.1f} max_ms={max(times):.1f}", file=summary)
    print(f"slope: {slope:.3f}" if slope is not None else "slope: n/a", file=summary)
    return 0


def _sizes(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pareto-roommates",
        description="Pareto efficiency of matchings in the roommates problem.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, help_ in (
        ("check", cmd_check, "decide efficiency with the quadratic-time algorithm"),
        ("oracle", cmd_oracle, "decide efficiency by exhaustive search (n <= 12)"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("path")
        p.add_argument("--witness", action="store_true", help="print a dominating matching")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if name == "check":
            p.add_argument("--dot", metavar="DIR", help="write G and G' as DOT files to DIR")
        p.set_defaults(func=fn)

    p = sub.add_parser("gen", help="print a seeded random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--solo-prob", type=float, default=0.2)
    p.add_argument(
        "--no-irrational", action="store_true", help="repair pairs that both prefer solitude"
    )
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time the checker across sizes, report log-log slope")
    p.add_argument("--sizes", type=_sizes, default=[256, 512, 1024, 2048])
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--family", choices=("dense", "efficient"), default="dense")
    p.add_argument("--out", metavar="CSV")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError, TooLarge, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
