"""Benchmark harness: run a suite of seeded instances per pair, compare
the dispatcher against the exact solver, and emit a machine-readable
report.

Timings are excluded from reports unless explicitly requested, so that a
fixed-seed rerun produces byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from typing import Optional

from .exact import BudgetExceeded, solve_exact
from .generate import generate_instance
from .graphs import SandwichInstance, Verdict
from .quartets import ForbiddenFamily, POLY_PAIRS
from .poly import solve


@dataclass(frozen=True)
class SuiteEntry:
    pair: tuple
    n_min: int
    n_max: int
    count: int
    seed: int
    mode: str = "random"  # instance generation mode


@dataclass
class RunReport:
    """Result of one solve, as surfaced by the CLI."""

    pair: tuple
    verdict: str  # Feasible | Infeasible | BudgetExceeded
    witness_edges: Optional[list] = None
    path: Optional[str] = None
    nodes: Optional[int] = None
    elapsed: Optional[float] = None

    def to_json(self) -> str:
        doc = {
            "pair": list(self.pair),
            "verdict": self.verdict,
            "path": self.path,
        }
        if self.witness_edges is not None:
            doc["witness"] = [list(e) for e in self.witness_edges]
        if self.nodes is not None:
            doc["nodes"] = self.nodes
        if self.elapsed is not None:
            doc["elapsed_s"] = self.elapsed
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def run_one(inst: SandwichInstance, pair: tuple, mode: str = "auto",
            budget: Optional[int] = None,
            with_timing: bool = False) -> RunReport:
    stats = {}
    start = time.perf_counter()
    try:
        verdict = solve(inst, pair, mode=mode, budget=budget, stats=stats)
    except BudgetExceeded:
        return RunReport(pair, "BudgetExceeded", path=stats.get("path"),
                         nodes=stats.get("nodes"),
                         elapsed=(time.perf_counter() - start
                                  if with_timing else None))
    elapsed = time.perf_counter() - start if with_timing else None
    return RunReport(
        pair, "Feasible" if verdict.feasible else "Infeasible",
        witness_edges=verdict.witness.edges() if verdict.feasible else None,
        path=stats.get("path"), nodes=stats.get("nodes"), elapsed=elapsed)


def run_suite(entries: list, compare_exact: bool = True,
              with_timing: bool = False) -> list:
    """One row per suite entry: instance counts, verdict tally, and (for
    tractable pairs) agreement with the exact solver."""
    rows = []
    for e in sorted(entries, key=lambda e: (e.pair, e.n_min, e.n_max, e.seed)):
        feasible = infeasible = agree = 0
        start = time.perf_counter()
        for i in range(e.count):
            n = e.n_min + i % (e.n_max - e.n_min + 1)
            inst = generate_instance(n, seed=e.seed + i, mode=e.mode,
                                     pair=e.pair)
            verdict = solve(inst, e.pair)
            if verdict.feasible:
                feasible += 1
            else:
                infeasible += 1
            if compare_exact:
                oracle = solve_exact(inst, ForbiddenFamily.of(*e.pair))
                if oracle.feasible == verdict.feasible:
                    agree += 1
        row = {
            "pair": f"{e.pair[0]},{e.pair[1]}",
            "n_min": e.n_min, "n_max": e.n_max, "count": e.count,
            "seed": e.seed, "feasible": feasible, "infeasible": infeasible,
            "oracle_agree": agree if compare_exact else "",
        }
        if with_timing:
            row["elapsed_s"] = round(time.perf_counter() - start, 3)
        rows.append(row)
    return rows


def default_suite(count: int = 20, n_min: int = 4, n_max: int = 8,
                  seed: int = 0) -> list:
    return [SuiteEntry(pair, n_min, n_max, count, seed)
            for pair in sorted(POLY_PAIRS)]


def report_as_csv(rows: list) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]))
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def report_as_json(rows: list) -> str:
    return json.dumps({"rows": rows}, indent=2, sort_keys=True) + "\n"


def load_suite(doc: dict) -> list:
    entries = []
    for row in doc["suite"]:
        pair = tuple(row["pair"].split(",")) if isinstance(row["pair"], str) \
            else tuple(row["pair"])
        entries.append(SuiteEntry(pair, int(row["n_min"]), int(row["n_max"]),
                                  int(row["count"]), int(row.get("seed", 0)),
                                  row.get("mode", "random")))
    return entries
