"""Compare the compiled and pure-numpy kernels on the same inputs.

    python benchmarks/bench_kernels.py [--rows 20000] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from circuitcodes import kernels
from circuitcodes._accel import HAVE_NUMBA
from circuitcodes.search import SearchConfig, enumerate_symmetric


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def closed_rows(rng, count: int, n: int, d: int) -> np.ndarray:
    half = rng.integers(1, d + 1, size=(count, n // 2))
    return np.concatenate((half, rng.permuted(half, axis=1)), axis=1).astype(np.int64)


def node_sweep(check, seq, k, d, r, n, period):
    for depth in range(r, period):
        for cand in range(1, d + 1):
            check(seq, depth, cand, k, n, period, d)


def search_with(use_numba: bool, cfg: SearchConfig) -> float:
    saved = kernels.USE_NUMBA
    kernels.USE_NUMBA = use_numba
    try:
        return enumerate_symmetric(cfg).seconds
    finally:
        kernels.USE_NUMBA = saved


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=20000)
    ap.add_argument("--n", type=int, default=20)
    ap.add_argument("--d", type=int, default=8)
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if not HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return 1
    rng = np.random.default_rng(0)
    rows = closed_rows(rng, args.rows, args.n, args.d)
    # warm up the compiled functions so compile time is not counted
    kernels.core_scan_batch_numba(rows[:2], args.k)
    kernels.oracle_scan_batch_numba(rows[:2], args.k)

    seq = np.array([1, 2, 3, 4, 5, 6, 7, 8, 9, 2, 4, 10, 6, 11, 8], dtype=np.int64)
    cases = [
        ("core_scan_batch", lambda: kernels.core_scan_batch_numba(rows, args.k),
         lambda: kernels.core_scan_batch_numpy(rows, args.k)),
        ("oracle_scan_batch", lambda: kernels.oracle_scan_batch_numba(rows, args.k),
         lambda: kernels.oracle_scan_batch_numpy(rows, args.k)),
        ("node_check sweep", lambda: node_sweep(kernels.node_check_numba, seq, 6, 11, 9, 30, 15),
         lambda: node_sweep(kernels.node_check_numpy, seq, 6, 11, 9, 30, 15)),
    ]
    print(f"{'kernel':<20}{'numba s':>12}{'numpy s':>12}{'speedup':>10}")
    for name, fast, slow in cases:
        fast()
        a, b = best_of(fast, args.repeat), best_of(slow, args.repeat)
        print(f"{name:<20}{a:>12.5f}{b:>12.5f}{b / a:>10.1f}")

    cfg = SearchConfig.create(9, 5, 7)
    search_with(True, cfg)
    a, b = search_with(True, cfg), search_with(False, cfg)
    print(f"{'search (9,5,7)':<20}{a:>12.5f}{b:>12.5f}{b / a:>10.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
