"""Benchmark the two row-reduction backends on random GF(p) matrices.

Run after installing the package:

    python benchmarks/bench_linalg.py [--sizes 100,300,600] [--reps 5] [-p 7]

The numba backend compiles once (cached); the numpy path is the fallback
selected by KOSZULKIT_BACKEND=numpy.  Both produce identical reduced
forms, pivots and ranks; only speed differs.
"""

import argparse
import time

import numpy as np

from koszulkit._kernels import BACKEND, rref_inplace, rref_numpy_inplace


def bench(size: int, reps: int, p: int, seed: int) -> tuple[float, float]:
    rng = np.random.default_rng(seed)
    mats = [rng.integers(0, p, size=(size, size)).astype(np.int64) for _ in range(reps)]
    rref_inplace(mats[0].copy(), p)  # warm the jit
    t0 = time.perf_counter()
    for m in mats:
        rref_inplace(m.copy(), p)
    hot = (time.perf_counter() - t0) / reps
    t0 = time.perf_counter()
    for m in mats:
        rref_numpy_inplace(m.copy(), p)
    cold = (time.perf_counter() - t0) / reps
    return hot, cold


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="100,300,600")
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("-p", "--prime", type=int, default=7)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"selected backend: {BACKEND}   (reps={args.reps}, p={args.prime})")
    print(f"{'size':>6}  {'selected [ms]':>14}  {'numpy [ms]':>12}  {'speedup':>8}")
    for size in sizes:
        hot, cold = bench(size, args.reps, args.prime, args.seed)
        print(f"{size:>6}  {hot * 1e3:>14.2f}  {cold * 1e3:>12.2f}  {cold / hot:>7.1f}x")


if __name__ == "__main__":
    main()
