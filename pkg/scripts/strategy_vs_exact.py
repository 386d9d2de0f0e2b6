#!/usr/bin/env python3
"""How far the constructive schedules sit above the true burning number.

For random trees of each order the script solves exactly and runs the
dispatcher, then tabulates lower bound, b, strategy m and ceil(sqrt n).
"""

import argparse
import collections

from graphburn.engine import longest_path_lower_bound, sqrt_ceil
from graphburn.exact import burning_number_exact
from graphburn.generators import SplitMix64, random_tree
from graphburn.strategies import dispatch_strategy


def main():
    ap = argparse.ArgumentParser(description="strategy vs exact burning number on random trees")
    ap.add_argument("--n-max", type=int, default=16)
    ap.add_argument("--per-n", type=int, default=50)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    rng = SplitMix64(args.seed)
    print(f"{'n':>3} {'trees':>6} {'b<sqrt':>7} {'m=b':>5} {'m-b max':>8} {'lb=b':>5}")
    for n in range(1, args.n_max + 1):
        tally = collections.Counter()
        worst = 0
        for _ in range(args.per_n):
            g = random_tree(n, rng.next_u64())
            b = burning_number_exact(g).burning_number
            m = dispatch_strategy(g).steps_used
            tally["below"] += b < sqrt_ceil(n)
            tally["tight"] += m == b
            tally["lb"] += longest_path_lower_bound(g) == b
            worst = max(worst, m - b)
        print(f"{n:>3} {args.per_n:>6} {tally['below']:>7} {tally['tight']:>5} {worst:>8} {tally['lb']:>5}")


if __name__ == "__main__":
    main()
