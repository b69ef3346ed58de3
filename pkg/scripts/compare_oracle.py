"""Solve random small instances and compare against the brute-force oracle."""

import argparse
import random

from spaths import SolveConfig, brute_force_packing, random_instance, solve, validate_packing


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    bad = fallback = 0
    for _ in range(args.count):
        n = rng.randint(2, args.max_n)
        m = rng.randint(n - 1, n + 10)
        k = rng.randint(2, n)
        inst = random_instance(n, m, k, rng.randint(2, k), rng.randrange(2 ** 32))
        rep = solve(inst, SolveConfig(verify=True))
        p = brute_force_packing(inst)[0]
        fallback += sum(c.rebuilds for c in rep.components)
        if rep.p != p or not validate_packing(inst, rep.packing)[0]:
            bad += 1
            print("mismatch", rep.p, p, inst)
    print(f"instances={args.count} mismatches={bad} rank_fallback_augmentations={fallback}")


if __name__ == "__main__":
    main()
