#!/usr/bin/env python3
"""Benchmark the flip-scan kernel backends (numba vs numpy).

The scan decides flip availability for a whole BFS frontier at once and is
the inner loop of tiling enumeration.  Run:

    python bench/bench_kernels.py [--repeat N]

Set FLIPCELLS_KERNELS to pin the backend used by the library itself; this
script times both code paths directly.
"""

import argparse
import time

import numpy as np

from flipcells import _kernels
from flipcells import zonotope as Z


def frontier_matrix(n, d):
    graph = Z.enumerate_tilings(Z.zonotope_spec(n, d))
    return np.array([t.plus for t in graph.payloads], dtype=np.uint64)


def time_scan(fn, plus, tables, repeat):
    fn(plus, *tables)  # warm-up (JIT compilation for numba)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(plus, *tables)
        best = min(best, time.perf_counter() - t0)
    return best


def time_enumeration(n, d, repeat):
    spec = Z.zonotope_spec(n, d)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        Z.enumerate_tilings(spec)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    print("available backends: numpy%s" % (", numba" if _kernels._njit_scan else ""))
    print()
    print("%-10s %10s %10s %12s %12s" % ("instance", "tilings", "sites", "numpy", "numba"))
    for n, d in [(5, 2), (6, 2), (6, 3), (7, 2)]:
        spec = Z.zonotope_spec(n, d)
        plus = frontier_matrix(n, d)
        tables = spec.flip_tables_np()
        t_np = time_scan(_kernels.scan_available_numpy, plus, tables, args.repeat)
        if _kernels._njit_scan is not None:
            t_nb = time_scan(_kernels.scan_available_numba, plus, tables, args.repeat)
            nb = "%10.3fms" % (t_nb * 1e3)
        else:
            nb = "%12s" % "n/a"
        print(
            "Z(%d,%d)     %10d %10d %10.3fms %s"
            % (n, d, plus.shape[0], tables[0].shape[0], t_np * 1e3, nb)
        )

    print()
    print("full enumeration (backend=%s):" % _kernels.BACKEND)
    for n, d in [(6, 2), (6, 3), (7, 2)]:
        t = time_enumeration(n, d, max(1, args.repeat // 2))
        print("  Z(%d,%d): %8.3fs" % (n, d, t))


if __name__ == "__main__":
    main()
