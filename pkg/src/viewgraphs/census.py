"""Census of minimal viewing graphs: counts of connected graphs, candidates,
moves-solvable and finite solvable graphs at ``e = e_min(n)``.

Per-graph verdicts are appended to a JSONL file keyed by graph6 so that an
interrupted run can resume. Each graph gets its own pinhole seed derived from
the run seed and its graph6 string, so results do not depend on the order in
which graphs are processed or on the number of workers.
"""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .counting import e_min
from .enumerate import enumerate_connected
from .graph import is_connected, parse_graph, to_graph6
from .lintest import finite_solvable
from .moves import solvable_with_moves
from .necessary import check_all_necessary


def graph_seed(seed: int, g6: str) -> int:
    digest = hashlib.sha256(f"{seed}:{g6}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def evaluate(g6: str, seed: int = 42, trials: int = 3, bound: int = 1000) -> dict:
    """All verdicts for one graph, as a JSON-ready record (0-based witnesses)."""
    g = parse_graph(g6, "graph6")
    nec = check_all_necessary(g)
    moves = solvable_with_moves(g)
    if g.n >= 2 and is_connected(g):
        finite, dim = finite_solvable(g, trials, bound, graph_seed(seed, g6))
    else:
        finite, dim = False, None
    return {
        "graph6": g6,
        "necessary": nec.to_json(),
        "moves": moves,
        "finite": finite,
        "kernel_dim": dim,
        "params": {"seed": seed, "trials": trials, "bound": bound},
    }


def _evaluate_args(args: tuple) -> dict:
    return evaluate(*args)


@dataclass
class CensusRow:
    n: int
    e: int
    connected: int = 0
    candidates: int = 0
    moves_solvable: int = 0
    finite_solvable: int = 0
    records: list[dict] = field(default_factory=list, repr=False)

    @property
    def counts(self) -> tuple[int, int, int, int]:
        return (self.connected, self.candidates, self.moves_solvable, self.finite_solvable)

    @property
    def undecided(self) -> list[str]:
        return [
            r["graph6"]
            for r in self.records
            if r["necessary"]["passed"] and r["finite"] and not r["moves"]
        ]

    def check_invariants(self) -> None:
        assert self.connected >= self.candidates >= self.moves_solvable
        assert self.finite_solvable >= self.moves_solvable

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "e": self.e,
            "connected": self.connected,
            "candidates": self.candidates,
            "moves_solvable": self.moves_solvable,
            "finite_solvable": self.finite_solvable,
            "finite_not_candidate": [
                r["graph6"] for r in self.records
                if r["finite"] and not r["necessary"]["passed"]
            ],
            "undecided": self.undecided,
        }


def _aggregate(n: int, e: int, records: Iterable[dict]) -> CensusRow:
    row = CensusRow(n, e, records=sorted(records, key=lambda r: r["graph6"]))
    for r in row.records:
        row.connected += 1
        row.candidates += r["necessary"]["passed"]
        row.moves_solvable += r["moves"]
        row.finite_solvable += r["finite"]
    return row


def load_records(path: Path, params: dict) -> dict[str, dict]:
    """Records from an earlier run with the same parameters; a torn last line is ignored."""
    done: dict[str, dict] = {}
    if not path.exists():
        return done
    with path.open() as fh:
        for line in fh:
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                continue
            if rec.get("params") == params:
                done[rec["graph6"]] = rec
    return done


def run_census(
    n: int,
    jobs: int = 1,
    seed: int = 42,
    trials: int = 3,
    bound: int = 1000,
    records_path: str | os.PathLike | None = None,
    resume: bool = False,
) -> CensusRow:
    if not 3 <= n <= 9:
        raise ValueError(f"census supports 3 <= n <= 9, got n={n}")
    e = e_min(n)
    params = {"seed": seed, "trials": trials, "bound": bound}
    keys = [to_graph6(g) for g in enumerate_connected(n, e)]

    path = Path(records_path) if records_path is not None else None
    done: dict[str, dict] = {}
    if path is not None:
        if resume:
            done = load_records(path, params)
        elif path.exists():
            path.unlink()
    todo = [k for k in keys if k not in done]

    out = path.open("a") if path is not None else None
    try:
        args = [(k, seed, trials, bound) for k in todo]
        if jobs > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = pool.map(_evaluate_args, args, chunksize=max(1, len(todo) // (8 * jobs)))
                for rec in results:
                    done[rec["graph6"]] = rec
                    if out:
                        out.write(json.dumps(rec, sort_keys=True) + "\n")
                        out.flush()
        else:
            for a in args:
                rec = evaluate(*a)
                done[rec["graph6"]] = rec
                if out:
                    out.write(json.dumps(rec, sort_keys=True) + "\n")
                    out.flush()
    finally:
        if out:
            out.close()

    row = _aggregate(n, e, (done[k] for k in keys))
    row.check_invariants()
    return row


def report_json(rows: list[CensusRow], params: dict) -> str:
    body = {"params": params, "rows": [r.to_json() for r in rows]}
    return json.dumps(body, indent=2, sort_keys=True) + "\n"


def report_table(rows: list[CensusRow]) -> str:
    labels = [
        ("n", lambda r: r.n),
        ("e", lambda r: r.e),
        ("connected", lambda r: r.connected),
        ("candidates", lambda r: r.candidates),
        ("solvable with moves", lambda r: r.moves_solvable),
        ("finite solvable", lambda r: r.finite_solvable),
    ]
    width = max(len(name) for name, _ in labels)
    cells = [[str(get(r)) for r in rows] for _, get in labels]
    col = max([len(c) for line in cells for c in line] + [1])
    lines = []
    for (name, _), line in zip(labels, cells):
        lines.append(name.ljust(width) + "  " + " ".join(c.rjust(col) for c in line))
    return "\n".join(lines) + "\n"
