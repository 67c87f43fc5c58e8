"""Random-instance table: % solved, mean gap and mean time per (n, density, config).

    python scripts/random_table.py --n 50 --count 10 --time-limit 120
"""

import argparse
import sys

from eqcol.bench import SuiteEntry, aggregate, expand_suite, format_table, run_benchmark, write_csv

DENSITIES = (0.1, 0.3, 0.5, 0.7, 0.9)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=50)
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--seed-base", type=int, default=5000)
    ap.add_argument("--configs", default="eqds1,eqds2")
    ap.add_argument("--time-limit", type=float, default=7200.0)
    ap.add_argument("--jobs", type=int, default=None)
    ap.add_argument("--csv", help="write per-run rows here")
    args = ap.parse_args()

    entries = [SuiteEntry("random", args.n, d, args.count, args.seed_base) for d in DENSITIES]
    rows = run_benchmark(expand_suite(entries), args.configs.split(","),
                         time_limit=args.time_limit, jobs=args.jobs)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            write_csv(rows, fh)
    sys.stdout.write(format_table(aggregate(rows)))


if __name__ == "__main__":
    main()
