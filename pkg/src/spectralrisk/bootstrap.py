"""Parametric bootstrap confidence intervals for SRM estimates.

Each trial simulates n losses from the assumed model, sorts them, maps
the j-th order statistic onto the j-th quadrature node and re-runs the
weighted-quantile estimate. Per-trial seeds come from a SplitMix64 mix of
(master_seed, trial_index), so trials are order-independent: the result
is bit-identical no matter how many workers schedule them.
"""

from __future__ import annotations

import concurrent.futures
import time
from dataclasses import dataclass

import numpy as np

from .distributions import NormalLossModel, sample
from .quadrature import QuadratureRule, build_grid, integrate_weighted

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def derive_trial_seed(master_seed: int, trial_index: int) -> int:
    """SplitMix64 finalizer over (master_seed, trial_index); order-free."""
    x = (master_seed + (trial_index + 1) * _GOLDEN_GAMMA) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & _MASK64


@dataclass(frozen=True)
class BootstrapConfig:
    """Trial layout: sample size n doubles as the quadrature node count."""

    spectrum: object
    model: NormalLossModel
    n: int = 10001
    b: int = 1000
    confidence: float = 0.90
    master_seed: int = 0
    rule: QuadratureRule = QuadratureRule.SIMPSON

    def __post_init__(self):
        if self.b < 2:
            raise ValueError(f"bootstrap needs b >= 2 trials, got {self.b}")
        if not 0.0 < self.confidence < 1.0:
            raise ValueError(f"confidence must lie in (0, 1), got {self.confidence!r}")
        if not isinstance(self.model, NormalLossModel):
            raise TypeError("parametric bootstrap requires a parametric loss model")
        if not 0 <= int(self.master_seed) <= _MASK64:
            raise ValueError("master_seed must fit in an unsigned 64-bit integer")
        build_grid(self.rule, self.n)  # surface grid constraint violations early


@dataclass(frozen=True)
class BootstrapResult:
    """Point estimate plus raw and standardized percentile bounds."""

    estimates_mean: float
    lower: float
    upper: float
    std_lower: float
    std_upper: float
    config: BootstrapConfig
    elapsed: float


def bootstrap_trial(config: BootstrapConfig, trial_index: int) -> float:
    """One bootstrap replicate of the SRM estimate."""
    if not 0 <= trial_index < config.b:
        raise IndexError(f"trial index {trial_index} out of range for b={config.b}")
    grid = build_grid(config.rule, config.n)
    return _trial_on_grid(config, grid, trial_index)


def _trial_on_grid(config: BootstrapConfig, grid, trial_index: int) -> float:
    seed = derive_trial_seed(int(config.master_seed), trial_index)
    losses = np.sort(sample(config.model, seed, config.n))
    return integrate_weighted(config.spectrum, losses, grid)


def _interp_order_statistic(sorted_values: np.ndarray, q: float) -> float:
    """Percentile via r = (b+1) q with linear interpolation, clamped to [1, b]."""
    b = sorted_values.size
    r = min(max((b + 1) * q, 1.0), float(b))
    lo = int(np.floor(r))
    if lo >= b:
        return float(sorted_values[-1])
    frac = r - lo
    return float(sorted_values[lo - 1]
                 + frac * (sorted_values[lo] - sorted_values[lo - 1]))


def bootstrap_ci(config: BootstrapConfig, workers: int = 1) -> BootstrapResult:
    """Percentile confidence interval from b independent trials.

    Trials are embarrassingly parallel; results are written into the
    estimate array by trial index, so the interval does not depend on the
    worker count or completion order.
    """
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    start = time.perf_counter()
    grid = build_grid(config.rule, config.n)
    estimates = np.empty(config.b)
    if workers == 1:
        for i in range(config.b):
            estimates[i] = _trial_on_grid(config, grid, i)
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(_trial_on_grid, config, grid, i): i
                       for i in range(config.b)}
            for fut, i in futures.items():
                estimates[i] = fut.result()

    ordered = np.sort(estimates)
    mean = float(np.mean(estimates))
    q_lo = (1.0 - config.confidence) / 2.0
    lower = _interp_order_statistic(ordered, q_lo)
    upper = _interp_order_statistic(ordered, 1.0 - q_lo)
    if mean == 0.0:
        raise ValueError("mean bootstrap estimate is zero; standardized bounds undefined")
    elapsed = time.perf_counter() - start
    return BootstrapResult(
        estimates_mean=mean, lower=lower, upper=upper,
        std_lower=lower / mean, std_upper=upper / mean,
        config=config, elapsed=elapsed)
