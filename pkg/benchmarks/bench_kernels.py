#!/usr/bin/env python3
"""Benchmark the compiled subset-evaluation kernel against the NumPy
fallback, and verify both return bit-identical results.

Usage: python3 benchmarks/bench_kernels.py [--models M] [--datasets N]
       [--budget B] [--repeats R]
"""

import argparse
import time

import numpy as np

from bench_audit._kernels import TIE_COMPETITION, get_backend
from bench_audit.subsets import enumerate_subsets, masks_to_column_array


def bench(impl, values, colidx, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        out = impl.audit_pass(values, colidx, TIE_COMPETITION)
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--models", type=int, default=13)
    parser.add_argument("--datasets", type=int, default=20)
    parser.add_argument("--budget", type=int, default=100_000)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    values = rng.uniform(0, 100, (args.models, args.datasets))

    python = get_backend("python")
    try:
        compiled = get_backend("compiled")
    except ImportError:
        compiled = None
        print("compiled kernel not built; benchmarking fallback only")

    print(f"{args.models} models x {args.datasets} datasets, "
          f"budget {args.budget}\n")
    print(f"{'n':>4} {'subsets':>9} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for n in (2, args.datasets // 4, args.datasets // 2):
        if n < 1:
            continue
        masks, mode = enumerate_subsets(args.datasets, n, args.budget, 0)
        colidx = masks_to_column_array(masks)
        t_py, out_py = bench(python, values, colidx, args.repeats)
        if compiled is None:
            print(f"{n:>4} {len(masks):>9} {t_py * 1e3:>9.1f}ms {'-':>10} {'-':>8}")
            continue
        t_c, out_c = bench(compiled, values, colidx, args.repeats)
        for a, b in zip(out_py, out_c):
            assert np.array_equal(a, b), "backends disagree"
        print(f"{n:>4} {len(masks):>9} {t_py * 1e3:>9.1f}ms "
              f"{t_c * 1e3:>9.1f}ms {t_py / t_c:>7.1f}x")
    print("\nbackends bit-identical on all runs")


if __name__ == "__main__":
    main()
