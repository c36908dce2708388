#!/usr/bin/env python3
"""Timing comparison of the numba and numpy audit-kernel paths.

The covariance and hermiticity residual scans are the package's hot loops:
one pass per group element per lift, N^4 indices each. This script times
both implementations on synthetic tables (parity and structure do not
matter to the kernels) and reports the speedup.

Usage:
    python benchmarks/bench_kernels.py [--sizes 5 9 15 21] [--repeats 200]
"""

import argparse
import statistics
import time

import numpy as np

from latwig import _kernels
from latwig.fano import covariance_phase_table, _hermiticity_phases
from latwig.lattice import sl2_complete


def _median_time(fn, repeats, warmup=3):
    for _ in range(warmup):
        fn()
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def bench(sizes, repeats):
    rng = np.random.default_rng(0)
    rows = []
    for n in sizes:
        table = rng.standard_normal((n, n, n, n)) + 1j * rng.standard_normal((n, n, n, n))
        g = sl2_complete(2, 1)
        cov_phases = covariance_phase_table(g, n)
        herm_phases = _hermiticity_phases(n)

        for name, numpy_fn, numba_fn in (
            (
                "covariance",
                lambda: _kernels.covariance_residuals_numpy(table, g.kappa, g.lam, g.mu, g.nu, cov_phases),
                None if not _kernels.HAVE_NUMBA else
                (lambda: _kernels.covariance_residuals_numba(table, g.kappa, g.lam, g.mu, g.nu, cov_phases)),
            ),
            (
                "hermiticity",
                lambda: _kernels.hermiticity_residuals_numpy(table, herm_phases),
                None if not _kernels.HAVE_NUMBA else
                (lambda: _kernels.hermiticity_residuals_numba(table, herm_phases)),
            ),
        ):
            t_numpy = _median_time(numpy_fn, repeats)
            t_numba = _median_time(numba_fn, repeats) if numba_fn is not None else None
            rows.append((name, n, t_numpy, t_numba))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[5, 9, 15, 21])
    parser.add_argument("--repeats", type=int, default=200)
    args = parser.parse_args()

    if not _kernels.HAVE_NUMBA:
        print(f"note: numba backend unavailable or disabled via {_kernels.ENV_FLAG}; "
              "timing the numpy path only")

    rows = bench(args.sizes, args.repeats)
    print(f"{'kernel':<12} {'N':>3} {'numpy [us]':>12} {'numba [us]':>12} {'speedup':>8}")
    for name, n, t_numpy, t_numba in rows:
        if t_numba is None:
            print(f"{name:<12} {n:>3} {t_numpy * 1e6:>12.1f} {'-':>12} {'-':>8}")
        else:
            print(f"{name:<12} {n:>3} {t_numpy * 1e6:>12.1f} {t_numba * 1e6:>12.1f} "
                  f"{t_numpy / t_numba:>7.2f}x")


if __name__ == "__main__":
    main()
