"""Compare the compiled kernel against the NumPy fallback.

Times the raw x*log2(x) accumulation at several array sizes, then the full
agreement computation at several matrix sizes with each backend swapped in.

Usage:
    python benchmarks/bench_kernels.py [--repeats N]
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from infoagree import _kernels, _pykernels
from infoagree.matrix import AgreementMatrix
from infoagree.measure import ia_epsilon

try:
    from infoagree import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeats):
    fn()
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def bench_kernel(repeats):
    print("xlog2_sum on random positive arrays (30% zeros), median seconds")
    header = f"{'size':>10}  {'numpy':>12}"
    if _ckernels is not None:
        header += f"  {'compiled':>12}  {'speedup':>8}"
    print(header)
    rng = np.random.default_rng(0)
    for size in (10_000, 160_000, 2_560_000):
        arr = rng.uniform(0.0, 50.0, size=size)
        arr[rng.uniform(size=size) < 0.3] = 0.0
        arr = np.ascontiguousarray(arr)
        t_py = best_of(lambda: _pykernels.xlog2_sum(arr), repeats)
        line = f"{size:>10}  {t_py:>12.6f}"
        if _ckernels is not None:
            t_c = best_of(lambda: _ckernels.xlog2_sum(arr), repeats)
            line += f"  {t_c:>12.6f}  {t_py / t_c:>7.2f}x"
        print(line)


def bench_measure(repeats):
    print()
    print("ia_epsilon end to end, median seconds")
    header = f"{'n':>10}  {'numpy':>12}"
    if _ckernels is not None:
        header += f"  {'compiled':>12}  {'speedup':>8}"
    print(header)
    rng = np.random.default_rng(1)
    backends = [("numpy", _pykernels.xlog2_sum)]
    if _ckernels is not None:
        backends.append(("compiled", _ckernels.xlog2_sum))
    original = _kernels.xlog2_sum
    try:
        for n in (400, 800, 1600):
            matrix = AgreementMatrix(rng.integers(0, 10, size=(n, n)))
            times = {}
            for name, kernel in backends:
                _kernels.xlog2_sum = kernel
                times[name] = best_of(lambda: ia_epsilon(matrix), repeats)
            line = f"{n:>10}  {times['numpy']:>12.6f}"
            if "compiled" in times:
                line += (
                    f"  {times['compiled']:>12.6f}"
                    f"  {times['numpy'] / times['compiled']:>7.2f}x"
                )
            print(line)
    finally:
        _kernels.xlog2_sum = original


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=9)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled kernel not built; timing the NumPy fallback only")
    bench_kernel(args.repeats)
    bench_measure(args.repeats)


if __name__ == "__main__":
    main()
