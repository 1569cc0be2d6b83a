"""Lie-Trotter error table for every mean: one row per (mean, t), plot-ready CSV.

    python3 scripts/convergence_table.py --count 5 --out convergence.csv
"""

import argparse
import csv
import sys

import numpy as np

from jordanmeans import parse_algebra
from jordanmeans.suites import lie_trotter_experiments

MEANS = [
    ("arithmetic", 2),
    ("harmonic", 2),
    ("geometric", 2),
    ("spectral", 2),
    ("sagae-geometric", 4),
    ("sagae-spectral", 4),
    ("hansen-geometric", 4),
    ("hansen-spectral", 4),
]


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=5, help="experiments per mean")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algebra", default="symmetric:3")
    p.add_argument("--commuting", action="store_true")
    p.add_argument("--out", help="CSV path (default: stdout)")
    args = p.parse_args(argv)

    alg = parse_algebra(args.algebra)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["mean", "n", "experiment_id", "t", "error", "floor", "order"])
    summary = []
    for mean, n in MEANS:
        runs = lie_trotter_experiments(mean, n=n, count=args.count, seed=args.seed, algebra=alg, commuting=args.commuting)
        for run in runs:
            r = run.report
            for t, e, f in zip(r.t_grid, r.errors, r.floors):
                w.writerow([mean, n, run.experiment_id, repr(t), repr(e), repr(f), r.order_label()])
        orders = np.array([r.report.fitted_order for r in runs])
        summary.append((mean, n, orders, all(r.report.passed for r in runs)))
    if args.out:
        out.close()
    for mean, n, orders, ok in summary:
        finite = orders[np.isfinite(orders)]
        span = f"{finite.min():.3f}..{finite.max():.3f}" if finite.size else "exact"
        print(f"{mean:>17} n={n}  order {span}  {'pass' if ok else 'FAIL'}", file=sys.stderr)


if __name__ == "__main__":
    main()
