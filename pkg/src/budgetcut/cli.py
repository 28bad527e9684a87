"""Command-line front end: ``solve``, ``generate``, ``reduce`` and ``bench``.

Exit codes: 0 solved (or heuristic finished), 2 infeasible, 3 limit hit,
64 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .bnb import Limits, SolveReport, constrained_cut, solve_by_blocks
from .graph import GraphError
from .instances import (
    BudgetSpec, InstanceFormatError, compute_budget, generate_random, knapsack_to_cut,
    parse_items, read_instance, serialize_instance, serialize_solution,
)
from .lagrangian import solve_dual
from .oracle import MAX_ORACLE_VERTICES, brute_force_cut, knapsack_dp

EXIT_OK, EXIT_INFEASIBLE, EXIT_LIMIT, EXIT_USAGE = 0, 2, 3, 64
METHODS = ("bnb", "lagrangian", "oracle", "blocks")
BENCH_FIELDS = ["instance", "n", "m", "p", "T", "sense", "method",
                "value", "cost", "proven", "millis"]
DEFAULT_P = {"min": "0.25,0.5,0.75", "max": "0.25,0.5,0.75,1,2"}
TIME_LIMIT_ENV = "BUDGETCUT_TIME_LIMIT"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def run_method(instance, T: int, sense: str, method: str, limits: Limits = None):
    """Run one solver; returns a SolveReport or a DualReport."""
    g = instance.graph
    if method == "bnb":
        return constrained_cut(g, T, sense, terminals=instance.terminals, limits=limits)
    if method == "lagrangian":
        if sense != "min":
            raise UsageError("the lagrangian method solves min-cut instances only")
        if instance.terminals is not None:
            raise UsageError("the lagrangian method does not support terminals")
        return solve_dual(g, T)
    started = time.perf_counter()
    if method == "oracle":
        if g.n > MAX_ORACLE_VERTICES:
            raise UsageError(f"oracle refuses {g.n} vertices (cap {MAX_ORACLE_VERTICES})")
        cut = brute_force_cut(g, T, sense, instance.terminals)
    elif method == "blocks":
        if instance.terminals is not None:
            raise UsageError("the blocks method does not support terminals")
        cut = solve_by_blocks(g, T, sense)
    else:
        raise UsageError(f"unknown method {method!r}")
    return SolveReport(cut, sense, T, elapsed=time.perf_counter() - started,
                       terminals=instance.terminals)


def _limits(args) -> Limits:
    seconds = args.time_limit
    if seconds is None and os.environ.get(TIME_LIMIT_ENV):
        seconds = float(os.environ[TIME_LIMIT_ENV])
    return Limits(args.node_limit, seconds)


def _load(path):
    try:
        return read_instance(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_solve(args) -> int:
    inst = _load(args.instance)
    if args.budget is not None:
        budget = BudgetSpec.absolute(args.budget)
    else:
        budget = compute_budget(inst.graph, args.budget_p)
    report = run_method(inst, budget.T, args.sense, args.method, _limits(args))
    print(serialize_solution(report, inst.graph, args.method, timing=not args.no_timing))
    if report.status == "infeasible":
        return EXIT_INFEASIBLE
    if report.status == "limit":
        return EXIT_LIMIT
    return EXIT_OK


def cmd_generate(args) -> int:
    if len(args.n) != len(args.m):
        raise UsageError("-n and -m must list the same number of values")
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    for n, m in zip(args.n, args.m):
        if n < 2 or not (n - 1 <= m <= n * (n - 1) // 2):
            raise UsageError(f"no connected simple graph with n={n}, m={m}")
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for n, m in zip(args.n, args.m):
        for index in range(1, args.count + 1):
            name = f"rnd_{n}_{m}_{index}"
            inst = generate_random(n, m, f"{args.seed}:{n}:{m}:{index}", name)
            (out / f"{name}.txt").write_text(serialize_instance(inst))
    return EXIT_OK


def cmd_reduce(args) -> int:
    try:
        items = parse_items(Path(args.items).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.items}: {exc.strerror or exc}") from None
    except InstanceFormatError as exc:
        raise UsageError(f"{args.items}: {exc}") from None
    if not items:
        raise UsageError("items file holds no items")
    if args.capacity < 0:
        raise UsageError("capacity must be non-negative")
    inst, rho = knapsack_to_cut(items, args.capacity)
    expected = sum(it.profit for it in items) - knapsack_dp(items, args.capacity)
    text = serialize_instance(inst)
    text = text.replace("\n", f"\n# budget {rho}\n# expected_st_optimum {expected}\n", 1)
    if args.output:
        Path(args.output).write_text(text)
        print(f'{{"budget": {rho}, "expected": {expected}, "output": "{args.output}"}}')
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _bench_task(task):
    path, p, sense, method, limits = task
    inst = read_instance(path)
    g = inst.graph
    row = {"instance": inst.name, "n": g.n, "m": len(g.edge_table), "p": p,
           "sense": sense, "method": method, "T": "", "value": "", "cost": "",
           "proven": "error", "millis": ""}
    try:
        T = compute_budget(g, p).T
        row["T"] = T
        report = run_method(inst, T, sense, method, limits)
    except (UsageError, ValueError) as exc:
        print(f"budgetcut: {inst.name} p={p} {method}: {exc}", file=sys.stderr)
        return row
    best = report.optimal if isinstance(report, SolveReport) else report.best_primal
    row.update(value="" if best is None else best.weight,
               cost="" if best is None else best.cost,
               proven="infeasible" if report.status == "infeasible" else str(report.proven).lower(),
               millis=round(report.elapsed * 1000, 3))
    return row


def cmd_bench(args) -> int:
    root = Path(args.instances)
    if not root.is_dir():
        raise UsageError(f"{root} is not a directory")
    p_values = [s.strip() for s in (args.p or DEFAULT_P[args.sense]).split(",") if s.strip()]
    methods = [s.strip() for s in args.methods.split(",") if s.strip()]
    for m in methods:
        if m not in METHODS:
            raise UsageError(f"unknown method {m!r}")
    out = Path(args.output)
    done = set()
    if out.exists() and out.stat().st_size > 0:
        with out.open(newline="") as fh:
            for row in csv.DictReader(fh):
                done.add((row["instance"], row["p"], row["sense"], row["method"]))
    limits = Limits(args.node_limit, args.time_limit)
    tasks = []
    for path in sorted(root.iterdir()):
        if not path.is_file() or path.suffix not in (".txt", ".dimacs", ".col", ".gr"):
            continue
        name = read_instance(path).name
        for p in p_values:
            for method in methods:
                if (name, p, args.sense, method) not in done:
                    tasks.append((str(path), p, args.sense, method, limits))
    new_file = not out.exists() or out.stat().st_size == 0
    with out.open("a", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=BENCH_FIELDS)
        if new_file:
            writer.writeheader()
        if args.workers > 1 and tasks:
            with ProcessPoolExecutor(max_workers=args.workers) as pool:
                rows = pool.map(_bench_task, tasks)
                for row in rows:
                    writer.writerow(row)
                    fh.flush()
        else:
            for task in tasks:
                writer.writerow(_bench_task(task))
                fh.flush()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="budgetcut", description="Budget-constrained min/max cut solvers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_limits(p):
        p.add_argument("--node-limit", type=int, help="stop after this many tree nodes")
        p.add_argument("--time-limit", type=float,
                       help=f"stop after this many seconds (default: ${TIME_LIMIT_ENV})")

    solve = sub.add_parser("solve", help="solve one instance")
    solve.add_argument("instance")
    solve.add_argument("--sense", choices=("min", "max"), default="min")
    budget = solve.add_mutually_exclusive_group(required=True)
    budget.add_argument("--budget", type=int, help="absolute budget T")
    budget.add_argument("--budget-p", type=str, help="T = m_w + floor(p * m_c)")
    solve.add_argument("--method", choices=METHODS, default="bnb")
    solve.add_argument("--no-timing", action="store_true", help="report millis as 0")
    add_limits(solve)
    solve.set_defaults(func=cmd_solve)

    gen = sub.add_parser("generate", help="write random instances")
    gen.add_argument("-n", type=int, nargs="+", required=True)
    gen.add_argument("-m", type=int, nargs="+", required=True)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--outdir", default=".")
    gen.set_defaults(func=cmd_generate)

    red = sub.add_parser("reduce", help="knapsack items -> s-t cut instance")
    red.add_argument("items", help="file with one 'profit weight' pair per line")
    red.add_argument("capacity", type=int, help="knapsack capacity")
    red.add_argument("-o", "--output")
    red.set_defaults(func=cmd_reduce)

    bench = sub.add_parser("bench", help="budget sweep over a directory of instances")
    bench.add_argument("instances")
    bench.add_argument("--sense", choices=("min", "max"), default="min")
    bench.add_argument("--p", help="comma-separated budget fractions")
    bench.add_argument("--methods", default="bnb", help="comma-separated methods")
    bench.add_argument("--output", "-o", default="bench.csv")
    bench.add_argument("--workers", type=int, default=1)
    add_limits(bench)
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:  # GraphError is a ValueError
        print(f"budgetcut: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
