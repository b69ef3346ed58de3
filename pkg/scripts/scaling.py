"""Time the solver and count dependence-matrix field operations over a size ladder."""

import argparse
import time

import numpy as np

from spaths import random_instance, solve
from spaths.base import initialize_base
from spaths.dependence import compute_dependence
from spaths.field import select_prime
from spaths.representation import make_labeling


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400, 800])
    ap.add_argument("--density", type=int, default=5, help="m / n")
    ap.add_argument("--k", type=int, default=20)
    ap.add_argument("--blocks", type=int, default=5)
    args = ap.parse_args()
    xs, ys = [], []
    for n in args.sizes:
        inst = random_instance(n, args.density * n, args.k, args.blocks, n)
        lab = make_labeling(inst, select_prime(args.blocks))
        ops = compute_dependence(inst, lab, initialize_base(inst)).ops
        t = time.perf_counter()
        rep = solve(inst)
        secs = time.perf_counter() - t
        xs.append(inst.m * inst.n)
        ys.append(ops)
        print(f"n={n} m={inst.m} p={rep.p} seconds={secs:.2f} ops={ops} ops/mn={ops / (inst.m * inst.n):.2f}")
    if len(xs) > 1:
        slope = np.polyfit(np.log(xs), np.log(ys), 1)[0]
        print(f"fitted exponent of ops against m*n: {slope:.3f}")


if __name__ == "__main__":
    main()
