"""Command-line interface.

Vertex labels are 1-based on input (edge-list) and in every printed report;
graph6 is label-free. Exit codes of ``check``: 0 solvable by moves,
10 finite solvable but undecided, 20 fails finite solvability, 30 fails a
necessary condition, 2 unreadable input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from pathlib import Path

from .census import report_json, report_table, run_census
from .counting import minimal_solvable
from .graph import (
    GraphParseError,
    GraphValidationError,
    ViewingGraph,
    is_connected,
    parse_graph,
    serialize_graph,
    to_graph6,
)
from .lintest import GenericityError, expected_dimension, finite_solvable
from .moves import MixedGraph, closure, to_dot
from .necessary import SearchTooLarge, check_all_necessary

EXIT_CODES = {
    "SolvableByMoves": 0,
    "FiniteSolvableUndecided": 10,
    "FailsFiniteSolvable": 20,
    "NotSolvable": 30,
}
LABEL_BASE = 1


def classify(necessary_passed: bool, moves: bool, finite: bool | None) -> str:
    if not necessary_passed:
        return "NotSolvable"
    if moves:
        return "SolvableByMoves"
    if finite:
        return "FiniteSolvableUndecided"
    return "FailsFiniteSolvable"


def solvability_report(
    g: ViewingGraph, seed: int = 42, trials: int = 3, bound: int = 1000, timings: bool = True
) -> dict:
    clock = {}
    t = time.perf_counter()
    nec = check_all_necessary(g)
    clock["necessary"] = time.perf_counter() - t

    t = time.perf_counter()
    m, trace = closure(g)
    moves = g.n <= 1 or m.is_complete()
    clock["moves"] = time.perf_counter() - t

    t = time.perf_counter()
    if g.n >= 2 and is_connected(g):
        finite, dim = finite_solvable(g, trials, bound, seed)
        expected = expected_dimension(g)
    else:
        finite, dim, expected = None, None, None
    clock["finite"] = time.perf_counter() - t

    report = {
        "graph": {
            "graph6": to_graph6(g),
            "n": g.n,
            "edges": [[a + LABEL_BASE, b + LABEL_BASE] for a, b in g.edges],
        },
        "necessary": nec.to_json(LABEL_BASE),
        "moves": {
            "solvable": moves,
            "steps": [s.describe(LABEL_BASE) for s in trace.steps],
        },
        "finite": {
            "verdict": finite,
            "kernel_dim": dim,
            "expected_dim": expected,
            "trials": trials,
            "seed": seed,
            "bound": bound,
        },
        "overall": classify(nec.passed, moves, finite),
    }
    if timings:
        report["timings"] = {k: round(v, 6) for k, v in clock.items()}
    return report


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"error: {name} must be an integer, got {raw!r}") from None


def _read_graph(args) -> ViewingGraph:
    text = args.graph
    if text == "-":
        text = sys.stdin.read()
    elif text.startswith("@"):
        text = Path(text[1:]).read_text()
    fmt = None if args.format in (None, "auto") else args.format
    return parse_graph(text, fmt, base=LABEL_BASE)


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    g = _read_graph(args)
    report = solvability_report(g, args.seed, args.trials, args.bound, not args.no_timings)
    _emit(json.dumps(report, indent=2) + "\n", args.output)
    return EXIT_CODES[report["overall"]]


def cmd_closure(args) -> int:
    g = _read_graph(args)
    m, trace = closure(g)
    lines = []
    if args.trace:
        lines.append(trace.to_text(LABEL_BASE))
    lines.append(f"complete: {str(m.is_complete()).lower()}\n")
    doubles = " ".join(f"({i + LABEL_BASE},{j + LABEL_BASE})" for i, j in m.double_arrows())
    lines.append(f"double arrows: {doubles}\n")
    sys.stdout.write("".join(lines))
    if args.dot:
        Path(args.dot + ".before.dot").write_text(to_dot(MixedGraph.from_graph(g), "before", LABEL_BASE))
        Path(args.dot + ".after.dot").write_text(to_dot(m, "after", LABEL_BASE))
    return 0


def cmd_census(args) -> int:
    records_dir = args.records or (".vg-census" if args.resume else None)
    if records_dir:
        Path(records_dir).mkdir(parents=True, exist_ok=True)
    rows = []
    for n in args.n:
        path = Path(records_dir) / f"n{n}.jsonl" if records_dir else None
        rows.append(
            run_census(n, args.jobs, args.seed, args.trials, args.bound, path, args.resume)
        )
    params = {"seed": args.seed, "trials": args.trials, "bound": args.bound}
    if args.output:
        Path(args.output).write_text(report_json(rows, params))
    if args.json:
        sys.stdout.write(report_json(rows, params))
    else:
        sys.stdout.write(report_table(rows))
    return 0


def cmd_construct(args) -> int:
    fmt = "edge-list" if args.format in (None, "auto") else args.format
    sys.stdout.write(serialize_graph(minimal_solvable(args.n), fmt, LABEL_BASE) + "\n")
    return 0


def cmd_convert(args) -> int:
    g = _read_graph(args)
    sys.stdout.write(serialize_graph(g, args.to, LABEL_BASE) + "\n")
    return 0


def cmd_epipolar(args) -> int:
    from .epipolar import (
        fundamental,
        random_cameras,
        triple_residuals,
        verify_move_II,
        verify_move_III,
    )

    rng = random.Random(args.seed)
    tally = {"triple": 0, "move_II": 0, "move_III": 0}
    for _ in range(args.instances):
        cams = random_cameras(rng, 5)
        f12, f23, f31 = (fundamental(cams[a], cams[b]) for a, b in ((0, 1), (1, 2), (2, 0)))
        tally["triple"] += triple_residuals(f12, f23, f31) == (0, 0, 0)
        tally["move_II"] += verify_move_II(cams[:4])
        tally["move_III"] += verify_move_III(cams)
    sys.stdout.write(json.dumps({"instances": args.instances, "passed": tally}) + "\n")
    return 0 if all(v == args.instances for v in tally.values()) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="pinhole seed (default 42, env VG_SEED)")
    common.add_argument("--trials", type=int, default=argparse.SUPPRESS, help="pinhole samples (default 3)")
    common.add_argument("--bound", type=int, default=argparse.SUPPRESS, help="coordinate bound (default 1000)")
    common.add_argument(
        "--format", choices=["auto", "edge-list", "graph6"], default=argparse.SUPPRESS,
        help="graph format (detected from content by default)",
    )

    p = argparse.ArgumentParser(prog="viewgraphs", description=__doc__.split("\n\n")[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="run every test on one graph")
    s.add_argument("graph", help="graph text, '-' for stdin or @FILE")
    s.add_argument("--output", "-o")
    s.add_argument("--no-timings", action="store_true", help="omit timings from the report")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("closure", parents=[common], help="moves closure of one graph")
    s.add_argument("graph")
    s.add_argument("--trace", action="store_true", help="print every added edge or arrow")
    s.add_argument("--dot", metavar="PREFIX", help="write PREFIX.before.dot and PREFIX.after.dot")
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("census", parents=[common], help="classify all minimal graphs on n vertices")
    s.add_argument("--n", type=int, nargs="+", required=True)
    s.add_argument("--jobs", type=int, default=None, help="worker processes (default 1, env VG_JOBS)")
    s.add_argument("--resume", action="store_true", help="reuse per-graph records from an earlier run")
    s.add_argument("--records", metavar="DIR", help="directory for per-graph JSONL records")
    s.add_argument("--output", "-o", help="write the JSON report here")
    s.add_argument("--json", action="store_true", help="print JSON instead of the table")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("construct", parents=[common], help="a minimal moves-solvable graph")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("convert", parents=[common], help="convert between formats")
    s.add_argument("graph")
    s.add_argument("--to", choices=["edge-list", "graph6"], required=True)
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("epipolar-selftest", parents=[common], help=argparse.SUPPRESS)
    s.add_argument("--instances", type=int, default=100)
    s.set_defaults(func=cmd_epipolar)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args.seed = getattr(args, "seed", _env_int("VG_SEED", 42))
    args.trials = getattr(args, "trials", 3)
    args.bound = getattr(args, "bound", 1000)
    args.format = getattr(args, "format", None)
    if getattr(args, "jobs", 0) is None:
        args.jobs = _env_int("VG_JOBS", 1)
    try:
        return args.func(args)
    except (GraphParseError, GraphValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SearchTooLarge, GenericityError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
