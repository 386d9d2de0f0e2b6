#!/usr/bin/env python3
"""Run check-conjecture over every tree class and print a per-class summary.

    python3 scripts/check_conjecture_sweep.py --count 500 --seed 1 --out results/
"""

import argparse
from pathlib import Path

from graphburn.cli import CLASSES, check_conjecture, row_failed, rows_to_csv


def summarize(rows):
    gaps = [r["steps_used"] - r["sqrt_n"] for r in rows]
    exact = [r for r in rows if isinstance(r["exact_b"], int)]
    optimal = sum(1 for r in exact if r["exact_b"] == r["steps_used"])
    return {
        "count": len(rows),
        "violations": sum(map(row_failed, rows)),
        "max_n": max(r["n"] for r in rows),
        "worst_gap": max(gaps),
        "mean_gap": sum(gaps) / len(gaps),
        "solved_exactly": len(exact),
        "strategy_optimal": optimal,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--n-max", type=int, default=300)
    ap.add_argument("--exact-below", type=int, default=15)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", type=Path, help="directory for one CSV per class")
    args = ap.parse_args()

    print(f"{'class':<12}{'count':>7}{'viol':>6}{'max n':>7}{'worst':>7}{'mean':>8}{'exact':>7}{'opt':>6}")
    for cls in CLASSES:
        rows = check_conjecture(cls, args.count, args.seed, 1, args.n_max, args.exact_below, args.workers)
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / f"{cls}.csv").write_text(rows_to_csv(rows), encoding="utf-8")
        s = summarize(rows)
        print(f"{cls:<12}{s['count']:>7}{s['violations']:>6}{s['max_n']:>7}{s['worst_gap']:>7}"
              f"{s['mean_gap']:>8.2f}{s['solved_exactly']:>7}{s['strategy_optimal']:>6}")


if __name__ == "__main__":
    main()
