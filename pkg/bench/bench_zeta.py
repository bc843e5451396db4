#!/usr/bin/env python3
"""Benchmark the compiled cone-sum kernel against the pure-Python fallback.

Generates synthetic periodic digit words and full (C, D) grids and times the
12*q^2-scaled zeta sum through both code paths, asserting agreement.

Usage: python3 bench/bench_zeta.py [--repeat N]
"""

import argparse
import random
import time

from heckezero.kernels import HAVE_COMPILED, pure_zeta12_times, zeta12_times

CASES = [
    # (q, word length, digit range)
    (11, 8, (2, 9)),
    (31, 32, (2, 12)),
    (101, 64, (2, 20)),
    (499, 128, (2, 30)),
]


def run_grid(fn, q, word):
    total = 0
    for C in range(1, q + 1):
        for D in range(1, q + 1):
            total += fn(q, C, D, word)
    return total


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    print(f"compiled extension available: {HAVE_COMPILED}")
    rng = random.Random(1)
    print(f"{'q':>5} {'m':>5} {'compiled (s)':>13} {'pure (s)':>10} "
          f"{'speedup':>8}")
    for q, m, (lo, hi) in CASES:
        word = [rng.randint(lo, hi) for _ in range(m)]
        t_fast = min(_timed(run_grid, zeta12_times, q, word)
                     for _ in range(args.repeat))
        t_pure = min(_timed(run_grid, pure_zeta12_times, q, word)
                     for _ in range(args.repeat))
        assert run_grid(zeta12_times, q, word) == \
            run_grid(pure_zeta12_times, q, word)
        ratio = t_pure / t_fast if t_fast > 0 else float("inf")
        print(f"{q:>5} {m:>5} {t_fast:>13.4f} {t_pure:>10.4f} {ratio:>7.1f}x")


def _timed(fn, *fn_args):
    t0 = time.perf_counter()
    fn(*fn_args)
    return time.perf_counter() - t0


if __name__ == "__main__":
    main()
