#!/usr/bin/env python3
"""Build reduced burning instances from random 3-partition instances.

For each instance the witness schedule is checked against the engine and
its horizon against the longest-path lower bound; the partition is then
read back off the schedule.
"""

import argparse

from graphburn.engine import longest_path_lower_bound, verify_sequence
from graphburn.generators import random_3partition_instance
from graphburn.recognition import spine_decompose
from graphburn.reduction import extract_partition, reduce_to_burning, solution_to_schedule


def main():
    ap = argparse.ArgumentParser(description="3-partition reduction round trips")
    ap.add_argument("--max-triples", type=int, default=4)
    ap.add_argument("--per-size", type=int, default=3)
    ap.add_argument("--seed", type=int, default=3)
    args = ap.parse_args()

    print(f"{'triples':>7} {'S':>4} {'n':>6} {'spine':>6} {'steps':>6} {'lb':>4} {'ok':>3}")
    for k in range(1, args.max_triples + 1):
        for j in range(args.per_size):
            inst, witness = random_3partition_instance(k, args.seed * 1000 + 10 * k + j)
            g, layout = reduce_to_burning(inst)
            s = solution_to_schedule(inst, layout, witness)
            back = sorted(sorted(t) for t in extract_partition(inst, layout, s, g))
            ok = bool(verify_sequence(g, s)) and back == sorted(sorted(t) for t in witness)
            print(f"{k:>7} {inst.S:>4} {g.n:>6} {spine_decompose(g).l:>6} {s.horizon:>6} "
                  f"{longest_path_lower_bound(g):>4} {'yes' if ok else 'NO':>3}")


if __name__ == "__main__":
    main()
