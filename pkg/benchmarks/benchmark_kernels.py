"""Compare the compiled and pure-numpy P-value kernels.

Times two_tailed_p on a million t statistics per degrees-of-freedom
setting and reports the worst absolute disagreement between backends.

Usage: python benchmarks/benchmark_kernels.py [size]
"""

import sys
import time

import numpy as np

from pvlik import _kernels_py

try:
    from pvlik import _kernels_cy
except ImportError:
    _kernels_cy = None


def bench(kernels, t, df, repeats=3):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = kernels.two_tailed_p(t, df)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    size = int(sys.argv[1]) if len(sys.argv) > 1 else 1_000_000
    rng = np.random.default_rng(0)
    t = rng.standard_normal(size) * 4.0
    print(f"{size} t statistics per case\n")
    print(f"{'df':>6} {'python':>10} {'cython':>10} {'speedup':>8} {'max|diff|':>10}")
    for df in (2.0, 8.0, 18.0, 199.0):
        t_py, p_py = bench(_kernels_py, t, df)
        if _kernels_cy is None:
            print(f"{df:6.0f} {t_py:9.3f}s {'n/a':>10} {'n/a':>8} {'n/a':>10}")
            continue
        t_cy, p_cy = bench(_kernels_cy, t, df)
        diff = float(np.max(np.abs(p_py - p_cy)))
        print(f"{df:6.0f} {t_py:9.3f}s {t_cy:9.3f}s {t_py / t_cy:7.1f}x {diff:10.2e}")
    if _kernels_cy is None:
        print("\ncompiled kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()
