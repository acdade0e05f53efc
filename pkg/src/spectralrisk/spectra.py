"""Risk-aversion weighting functions over cumulative probability.

A spectrum maps p in [0, 1] to a non-negative weight, integrates to one,
and is non-decreasing; those three admissibility properties are what
``validate_spectrum`` checks numerically.

``ExponentialSpectrum`` derives from exponential utility U(x) = -exp(-ax):
weight(p) = lambda * exp(-a(1-p)) with lambda = a / (1 - exp(-a)), where a
is the (constant) Arrow-Pratt coefficient of absolute risk aversion. Some
authors parameterize the same family by gamma = 1/a; this module
standardizes on a. ``ESSpectrum`` is the expected-shortfall step spectrum
with flat tail weight 1/(1-alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels


def normalization_constant(a: float) -> float:
    """lambda = a / (1 - exp(-a)); > 1 for a > 0, -> 1 as a -> 0+."""
    if not a > 0.0:
        raise ValueError(f"risk aversion must be > 0, got {a!r}")
    return a / -math.expm1(-a)


def exp_weight(p: float, a: float) -> float:
    """Exponential spectrum weight lambda * exp(-a(1-p)) at a single p.

    Computed in log space so large a (100 and beyond) cannot overflow.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    if not a > 0.0:
        raise ValueError(f"risk aversion must be > 0, got {a!r}")
    log_lam = math.log(a) - math.log(-math.expm1(-a))
    return math.exp(log_lam - a * (1.0 - p))


def es_weight(p: float, alpha: float) -> float:
    """Expected-shortfall weight: 0 below alpha, 1/(1-alpha) at and above.

    The boundary p = alpha belongs to the tail (closed-tail convention).
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    return 1.0 / (1.0 - alpha) if p >= alpha else 0.0


def utility(x: float, a: float) -> float:
    """Exponential utility U(x) = -exp(-ax); increasing, concave, negative."""
    if not a > 0.0:
        raise ValueError(f"risk aversion must be > 0, got {a!r}")
    return -math.exp(-a * x)


def absolute_risk_aversion(a: float) -> float:
    """-U''/U' for exponential utility: constant, equal to a."""
    if not a > 0.0:
        raise ValueError(f"risk aversion must be > 0, got {a!r}")
    return a


def relative_risk_aversion(x: float, a: float) -> float:
    """-x U''/U' for exponential utility: x * a."""
    return x * absolute_risk_aversion(a)


@dataclass(frozen=True)
class ExponentialSpectrum:
    """Exponential risk-aversion spectrum with ARA coefficient a > 0.

    a = 0 (the flat, risk-neutral spectrum) is rejected rather than
    special-cased; the a -> 0 limit is covered by tests, not by the API.
    """

    a: float

    def __post_init__(self):
        if not (np.isfinite(self.a) and self.a > 0.0):
            raise ValueError(f"risk aversion must be finite and > 0, got {self.a!r}")

    def weights(self, p: np.ndarray) -> np.ndarray:
        return kernels.exp_weights(np.asarray(p, dtype=np.float64), self.a)

    def describe(self) -> str:
        return f"exp:{self.a!r}"


@dataclass(frozen=True)
class ESSpectrum:
    """Expected-shortfall spectrum at confidence level alpha in (0, 1)."""

    alpha: float

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and 0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha!r}")

    def weights(self, p: np.ndarray) -> np.ndarray:
        p = np.asarray(p, dtype=np.float64)
        return np.where(p >= self.alpha, 1.0 / (1.0 - self.alpha), 0.0)

    def describe(self) -> str:
        return f"es:{self.alpha!r}"


@dataclass(frozen=True)
class SpectrumReport:
    """Outcome of the three admissibility checks on a uniform grid."""

    positivity_ok: bool
    normalisation_value: float
    normalisation_ok: bool
    increasing_ok: bool
    tolerance: float

    @property
    def all_ok(self) -> bool:
        return self.positivity_ok and self.normalisation_ok and self.increasing_ok


def evaluate_weights(spectrum, p: np.ndarray) -> np.ndarray:
    """Weights of a spectrum object or raw callable on an array of p values."""
    fn = spectrum.weights if hasattr(spectrum, "weights") else spectrum
    try:
        out = np.asarray(fn(p), dtype=np.float64)
        if out.shape == p.shape:
            return out
    except (TypeError, ValueError):
        pass  # scalar-only callable; evaluate pointwise
    return np.array([float(fn(x)) for x in p], dtype=np.float64)


def validate_spectrum(spectrum, grid_size: int = 10001,
                      tolerance: float = 1e-8) -> SpectrumReport:
    """Check positivity, unit integral and monotonicity on a uniform grid.

    The integral check uses composite Simpson on the closed grid [0, 1]
    (spectra are bounded there, so no endpoint precautions are needed).
    An even grid_size is bumped to the next odd count. Failures are
    reported, never raised.
    """
    if grid_size < 3:
        raise ValueError(f"grid_size must be >= 3, got {grid_size}")
    m = grid_size if grid_size % 2 == 1 else grid_size + 1
    p = np.linspace(0.0, 1.0, m)
    vals = evaluate_weights(spectrum, p)

    simp = np.ones(m)
    simp[1:-1:2] = 4.0
    simp[2:-1:2] = 2.0
    simp /= 3.0 * (m - 1)
    norm_value = kernels.weighted_mass(simp, vals)

    return SpectrumReport(
        positivity_ok=bool((vals >= 0.0).all()),
        normalisation_value=norm_value,
        normalisation_ok=bool(abs(norm_value - 1.0) <= tolerance),
        increasing_ok=bool((np.diff(vals) >= 0.0).all()),
        tolerance=tolerance,
    )
