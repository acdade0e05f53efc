"""Benchmark the numba kernels against the pure-numpy fallback.

Times the two hot stages of an SRM evaluation (inverse normal CDF over
the grid, and the full weighted integration pipeline) on both backends
and reports per-call seconds plus the speedup.

Usage:
    python benchmarks/bench_backends.py [--n 1000001] [--repeats 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from spectralrisk import _kernels_numpy

try:
    from spectralrisk import _kernels_numba
    HAS_NUMBA = True
except ImportError:
    _kernels_numba = None
    HAS_NUMBA = False


def _pipeline(kernels, nodes, weights, a):
    q = kernels.norm_ppf(nodes)
    phi = kernels.exp_weights(nodes, a)
    return kernels.weighted_sum(weights, phi, q) / kernels.weighted_mass(weights, phi)


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> None:
    parser = argparse.ArgumentParser(description="Compare kernel backends")
    parser.add_argument("--n", type=int, default=1_000_001)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--a", type=float, default=5.0)
    args = parser.parse_args()

    n = args.n
    nodes = np.arange(1, n + 1, dtype=np.float64) / (n + 1)
    pattern = np.ones(n)
    pattern[1:-1:2] = 4.0
    pattern[2:-1:2] = 2.0
    weights = pattern / pattern.sum()

    backends = [("numpy", _kernels_numpy)]
    if HAS_NUMBA:
        _pipeline(_kernels_numba, nodes[:101], weights[:101], args.a)  # jit warmup
        backends.append(("numba", _kernels_numba))
    else:
        print("numba not importable; benchmarking the numpy path only")

    print(f"n={n} repeats={args.repeats} a={args.a}")
    results = {}
    for name, impl in backends:
        t_ppf, _ = _time(lambda: impl.norm_ppf(nodes), args.repeats)
        t_full, value = _time(
            lambda: _pipeline(impl, nodes, weights, args.a), args.repeats)
        results[name] = (t_ppf, t_full)
        print(f"{name:>6}: norm_ppf {t_ppf:.4f}s ({n / t_ppf / 1e6:.1f}M nodes/s)   "
              f"full srm {t_full:.4f}s   value={value:.10f}")

    if len(results) == 2:
        speed_ppf = results["numpy"][0] / results["numba"][0]
        speed_full = results["numpy"][1] / results["numba"][1]
        print(f"speedup numba/numpy: norm_ppf x{speed_ppf:.1f}, full srm x{speed_full:.1f}")


if __name__ == "__main__":
    main()
