"""Command-line front end.

Exit codes for `solve`: 0 feasible, 1 infeasible, 2 budget exhausted or
unsupported family, 3+ usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bench as bench_mod
from . import instance_io
from .exact import BudgetExceeded
from .generate import PlantingError, generate_instance
from .graphs import Graph, verify_sandwich
from .hardness import (OneInThreeInstance, gadget, reduce_3col,
                       reduce_one_in_three, wrap_gadget, GADGET_KINDS)
from .poly import UnsupportedFamilyError
from .quartets import ForbiddenFamily, QUARTET_NAMES, status_as_json, status_as_text

EXIT_FEASIBLE = 0
EXIT_INFEASIBLE = 1
EXIT_LIMIT = 2  # budget exhausted / no solver of the requested kind
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _parse_family(text: str) -> tuple:
    names = tuple(x.strip() for x in text.split(","))
    if len(names) != 2:
        raise ValueError("--family needs two comma-separated names")
    for nm in names:
        if nm not in QUARTET_NAMES:
            raise ValueError(f"unknown graph name {nm!r} "
                             f"(choose from {', '.join(QUARTET_NAMES)})")
    return names


def _write(text: str, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_solve(args) -> int:
    pair = _parse_family(args.family)
    inst, _ = instance_io.load(args.input, args.format)
    report = bench_mod.run_one(inst, pair, mode=args.mode,
                               budget=args.budget_nodes,
                               with_timing=args.timings)
    _write(report.to_json(), args.output)
    return {"Feasible": EXIT_FEASIBLE, "Infeasible": EXIT_INFEASIBLE,
            "BudgetExceeded": EXIT_LIMIT}[report.verdict]


def _cmd_verify(args) -> int:
    pair = _parse_family(args.family)
    inst, _ = instance_io.load(args.input, args.format)
    with open(args.witness) as fh:
        witness = instance_io.witness_from_json(json.load(fh))
    ok = verify_sandwich(inst, witness, ForbiddenFamily.of(*pair).graphs)
    print("true" if ok else "false")
    return EXIT_FEASIBLE if ok else EXIT_INFEASIBLE


def _cmd_reduce(args) -> int:
    if args.kind == "one-in-three":
        with open(args.input) as fh:
            doc = json.load(fh)
        f = OneInThreeInstance.of(doc["num_vars"], doc["clauses"])
        out = reduce_one_in_three(f)
    elif args.kind in ("pawK4", "pawCoK4"):
        with open(args.input) as fh:
            doc = json.load(fh)
        h = Graph.from_edges(doc["n"], [tuple(e) for e in doc["edges"]])
        out = reduce_3col(h, args.kind, t=args.t)
    elif args.kind in GADGET_KINDS:
        inst, _ = instance_io.load(args.input, args.format)
        out = wrap_gadget(inst, args.kind)
    else:
        raise ValueError(f"unknown reduction kind {args.kind!r}")
    family = out.family if isinstance(out.family, str) else ",".join(out.family)
    meta = {"family": family, "kind": args.kind,
            **{k: v for k, v in out.meta.items() if isinstance(v, (str, int, bool))}}
    _write(instance_io.to_json(out.instance, meta), args.output)
    return EXIT_FEASIBLE


def _cmd_gen(args) -> int:
    pair = _parse_family(args.family) if args.family else None
    inst = generate_instance(args.n, seed=args.seed, mode=args.mode,
                             pair=pair, density=args.density,
                             mandatory_fraction=args.mandatory_fraction)
    meta = {"seed": args.seed, "mode": args.mode}
    if pair:
        meta["family"] = ",".join(pair)
    if args.format == "text":
        _write(instance_io.to_text(inst), args.output)
    else:
        _write(instance_io.to_json(inst, meta), args.output)
    return EXIT_FEASIBLE


def _cmd_status(args) -> int:
    text = status_as_json() if args.format == "json" else status_as_text()
    _write(text, args.output)
    return EXIT_FEASIBLE


def _cmd_bench(args) -> int:
    if args.suite:
        with open(args.suite) as fh:
            entries = bench_mod.load_suite(json.load(fh))
    else:
        entries = bench_mod.default_suite(count=args.count, seed=args.seed)
    rows = bench_mod.run_suite(entries, with_timing=args.timings)
    if args.format == "csv":
        _write(bench_mod.report_as_csv(rows), args.output)
    else:
        _write(bench_mod.report_as_json(rows), args.output)
    return EXIT_FEASIBLE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sandwich4",
                     description="Graph sandwich solver for forbidden "
                                 "pairs of order-4 graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, family_required=True):
        p.add_argument("--family", required=family_required,
                       help="comma-separated pair, e.g. paw,co-C4")
        p.add_argument("--input", required=True)
        p.add_argument("--format", choices=("json", "text"), default=None)
        p.add_argument("--output", default=None)

    p = sub.add_parser("solve", help="solve a sandwich instance")
    common(p)
    p.add_argument("--mode", choices=("auto", "poly", "exact"), default="auto")
    p.add_argument("--budget-nodes", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)  # accepted for symmetry
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock time (breaks byte determinism)")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="check a witness graph")
    common(p)
    p.add_argument("--witness", required=True,
                   help="JSON file with fields n and edges")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("reduce", help="emit a hardness-reduction instance")
    p.add_argument("--kind", required=True,
                   choices=("one-in-three", "pawK4", "pawCoK4") + GADGET_KINDS)
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("json", "text"), default=None)
    p.add_argument("--t", type=int, default=9)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("gen", help="generate a seeded instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", default=None)
    p.add_argument("--mode", choices=("random", "planted"), default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--mandatory-fraction", type=float, default=0.4)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("status", help="print the pair classification table")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_status)

    p = sub.add_parser("bench", help="run a benchmark suite")
    p.add_argument("--suite", default=None, help="JSON suite file")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--timings", action="store_true")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (instance_io.ParseError, ValueError, KeyError, OSError,
            json.JSONDecodeError, PlantingError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, UnsupportedFamilyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
