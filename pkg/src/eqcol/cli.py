"""Command line: ``eqcol solve`` and ``eqcol bench``.

Exit codes: 0 solved to optimality (or benchmark finished), 2 a limit was
reached, 1 bad input.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .bench import SuiteError, aggregate, expand_suite, format_table, parse_suite, run_benchmark, write_csv
from .graph import DimacsError, random_graph, read_dimacs
from .search import ColorOrder, Engine, Pruning, SolverConfig, Status, Strategy, solve

EXIT_OK, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2


def parse_random_spec(spec: str) -> tuple[int, float, int]:
    """``n=<n>,d=<density>,seed=<s>`` -> (n, density, seed)."""
    fields = {}
    for part in spec.split(","):
        key, sep, value = part.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {part!r}")
        fields[key.strip()] = value.strip()
    if set(fields) != {"n", "d", "seed"}:
        raise ValueError("random spec needs exactly n, d and seed")
    return int(fields["n"]), float(fields["d"]), int(fields["seed"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eqcol", description="Exact equitable graph coloring.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--dimacs", metavar="PATH", help="DIMACS .col file")
    src.add_argument("--random", metavar="n=N,d=D,seed=S", help="seeded random graph")
    p.add_argument("--strategy", choices=[s.value for s in Strategy], default=Strategy.PASS.value)
    p.add_argument("--order", choices=[o.value for o in ColorOrder], default=ColorOrder.SIZE_ASC.value)
    p.add_argument("--pruning", choices=[x.value for x in Pruning], default=Pruning.EQUITY.value)
    p.add_argument("--time-limit", type=float, default=7200.0, metavar="SEC")
    p.add_argument("--node-limit", type=int, default=None)
    p.add_argument("--engine", choices=[e.value for e in Engine], default=Engine.COMPILED.value)
    p.add_argument("--print-coloring", action="store_true")

    b = sub.add_parser("bench", help="run a benchmark suite")
    b.add_argument("--suite", required=True, metavar="FILE")
    b.add_argument("--configs", default="eqds1,eqds2",
                   help="comma list of eqds1, eqds2, trivial or <strategy>-<order>-<pruning>")
    b.add_argument("--out", metavar="CSV", help="per-run CSV (default: stdout)")
    b.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    b.add_argument("--time-limit", type=float, default=7200.0, metavar="SEC")
    b.add_argument("--node-limit", type=int, default=None)
    return parser


def run_solve_command(args, out=None) -> int:
    out = out or sys.stdout
    try:
        if args.dimacs:
            g = read_dimacs(args.dimacs)
            name = Path(args.dimacs).stem
        else:
            n, d, seed = parse_random_spec(args.random)
            g = random_graph(n, d, seed)
            name = f"random n={n} d={d} seed={seed}"
        config = SolverConfig(args.strategy, args.order, args.pruning,
                              time_limit=args.time_limit, node_limit=args.node_limit,
                              engine=args.engine)
    except (OSError, DimacsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    r = solve(g, config)
    print(f"instance   {name}", file=out)
    print(f"graph      n={g.n} m={g.m}", file=out)
    print(f"config     {config.label}", file=out)
    print(f"initial    LB={r.lb0} UB={r.ub0}", file=out)
    print(f"status     {r.status.value}", file=out)
    if r.status is Status.OPTIMAL:
        print(f"chi_eq     {r.chi_eq}", file=out)
    else:
        print(f"bounds     LB={r.lb_final} UB={r.ub_final} gap={r.relative_gap:.1f}%", file=out)
    print(f"nodes      {r.nodes}", file=out)
    print(f"time       {r.wall_time:.3f} s", file=out)
    if args.print_coloring:
        out.write(r.incumbent.format())
    return EXIT_OK if r.status is Status.OPTIMAL else EXIT_LIMIT


def run_benchmark_command(args, out=None) -> int:
    out = out or sys.stdout
    configs = [c.strip() for c in args.configs.split(",") if c.strip()]
    try:
        suite_path = Path(args.suite)
        entries = parse_suite(suite_path.read_text(encoding="utf-8"), base_dir=suite_path.parent)
        instances = expand_suite(entries)
        rows = run_benchmark(instances, configs, time_limit=args.time_limit,
                             jobs=args.jobs, node_limit=args.node_limit)
    except (OSError, SuiteError, DimacsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, out)
    out.write(format_table(aggregate(rows)))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "solve":
        return run_solve_command(args)
    return run_benchmark_command(args)


if __name__ == "__main__":
    sys.exit(main())
