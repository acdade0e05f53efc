"""User-facing risk measures: spectral risk measure, VaR, expected
shortfall and lower partial moments, plus a high-precision reference
integrator used as the accuracy oracle for convergence studies."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.integrate import quad

from . import kernels
from .distributions import (EmpiricalLossModel, NormalLossModel,
                            STANDARD_NORMAL, normal_pdf, normal_quantile)
from .quadrature import Grid, QuadratureRule, build_grid, integrate_weighted
from .spectra import ESSpectrum, ExponentialSpectrum, validate_spectrum

LossModel = Union[NormalLossModel, EmpiricalLossModel]


@dataclass(frozen=True)
class SRMEstimate:
    """One computed risk-measure value with full method provenance."""

    value: float
    spectrum: str
    rule: QuadratureRule
    n: int
    elapsed: float


def _describe(spectrum) -> str:
    if hasattr(spectrum, "describe"):
        return spectrum.describe()
    return getattr(spectrum, "__name__", repr(spectrum))


def srm(spectrum, model: LossModel, rule: QuadratureRule = QuadratureRule.SIMPSON,
        n: int = 10001) -> SRMEstimate:
    """Spectral risk measure of a loss model under a weighting spectrum.

    For an ``EmpiricalLossModel`` the node count must equal the sample
    size; the j-th order statistic is then used as the quantile at the
    j-th grid node. Raw weight callables are screened through
    validate_spectrum at a coarse tolerance before use; the built-in
    spectrum types enforce their own admissibility at construction.
    """
    if not (hasattr(spectrum, "weights") or callable(spectrum)):
        raise TypeError("spectrum must expose .weights(p) or be callable")
    if not hasattr(spectrum, "weights"):
        report = validate_spectrum(spectrum, 1001, 0.05)
        if not report.all_ok:
            raise ValueError(
                "weight function fails spectrum admissibility checks: "
                f"positivity={report.positivity_ok} "
                f"normalisation={report.normalisation_value!r} "
                f"increasing={report.increasing_ok}")

    start = time.perf_counter()
    grid = build_grid(rule, n)
    if isinstance(model, EmpiricalLossModel):
        if model.n != n:
            raise ValueError(
                f"empirical model has {model.n} order statistics; grid needs n={n}")
        value = integrate_weighted(spectrum, model.sorted_losses, grid)
    else:
        value = integrate_weighted(spectrum, model.quantile, grid)
    elapsed = time.perf_counter() - start

    return SRMEstimate(value=value, spectrum=_describe(spectrum),
                       rule=QuadratureRule(rule), n=n, elapsed=elapsed)


_REF_EPS = 1e-14
_REF_ABS_TARGET = 1e-9
_REF_HALVING_TOL = 1e-10


def _reference_integral(a: float, model: LossModel, eps: float) -> float:
    log_lam = np.log(a) - np.log(-np.expm1(-a))

    def f(p):
        return np.exp(log_lam - a * (1.0 - p)) * model.quantile(p)

    pts = {0.25, 0.5, 0.75}
    for c in (0.5, 2.0, 8.0, 32.0):
        if 1.0 - c / a > 4 * eps:
            pts.add(1.0 - c / a)
    value, err = quad(f, eps, 1.0 - eps, points=sorted(pts), limit=500,
                      epsabs=1e-11, epsrel=1e-12)
    if err > _REF_ABS_TARGET:
        raise RuntimeError(
            f"adaptive reference integration error estimate {err:.2e} "
            f"exceeds target {_REF_ABS_TARGET:.0e}")
    return value


def reference_srm(a: float, model: LossModel = STANDARD_NORMAL) -> float:
    """High-accuracy exponential SRM via adaptive quadrature.

    Integrates on [eps, 1-eps] with eps = 1e-14 and verifies the
    truncation is immaterial by halving eps and requiring the value to
    move by less than 1e-10. Serves as the oracle for percentage-error
    reporting; absolute error target 1e-9.
    """
    if not a > 0.0:
        raise ValueError(f"risk aversion must be > 0, got {a!r}")
    full = _reference_integral(a, model, _REF_EPS)
    halved = _reference_integral(a, model, _REF_EPS / 2.0)
    if abs(full - halved) > _REF_HALVING_TOL:
        raise RuntimeError(
            f"reference truncation check failed: eps-halving moved the value "
            f"by {abs(full - halved):.2e} (tolerance {_REF_HALVING_TOL:.0e})")
    return halved


def var(model: LossModel, alpha: float) -> float:
    """Value-at-risk: the alpha-quantile of the loss model, no quadrature."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    return float(model.quantile(alpha))


def es(model: LossModel, alpha: float, mode: str = "closed_form",
       n: int = 100001, rule: QuadratureRule = QuadratureRule.SIMPSON) -> float:
    """Expected shortfall at confidence alpha.

    closed_form (normal models only): mu + sigma * pdf(z_alpha)/(1-alpha).
    quadrature: the flat-tail spectrum integrated on the standard interior
    grid affinely mapped onto [alpha, 1], so the integrand is smooth and
    only O(1/n) of the far tail is truncated; agrees with the closed form
    to ~1e-3 already at modest n and to ~1e-5 at n = 100001.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    mode = mode.replace("-", "_").strip().lower()
    if mode == "closed_form":
        if not isinstance(model, NormalLossModel):
            raise ValueError("closed-form expected shortfall requires a normal model")
        z = normal_quantile(alpha)
        return model.mu + model.sigma * normal_pdf(z) / (1.0 - alpha)
    if mode != "quadrature":
        raise ValueError(f"mode must be closed_form or quadrature, got {mode!r}")

    grid = build_grid(rule, n)
    p = alpha + (1.0 - alpha) * grid.nodes
    q = np.asarray(model.quantile(p), dtype=np.float64)
    if not np.isfinite(q).all():
        j = int(np.argmax(~np.isfinite(q)))
        raise ValueError(f"quantile is not finite at tail node {j} (p={p[j]!r})")
    # Constant tail weight cancels against the domain length: sum w_j q_j.
    return kernels.weighted_mass(grid.weights, q) / kernels.weighted_mass(
        grid.weights, np.ones_like(q))


def es_spectrum_estimate(model: LossModel, alpha: float, n: int = 100001,
                         rule: QuadratureRule = QuadratureRule.SIMPSON) -> SRMEstimate:
    """Expected shortfall through the fully general SRM path.

    Integrates the discontinuous step spectrum on the standard [0, 1]
    grid. Kept as the stress exercise of the general machinery; its
    discretisation error is an order of magnitude above es(quadrature).
    """
    return srm(ESSpectrum(alpha), model, rule, n)


def lpm(model_or_sample, k: float, target: float,
        n_draws: int = 1_000_000, seed: int = 0) -> float:
    """Lower partial moment of order k around a target: E[max(0, t - r)^k].

    Accepts either a loss model (Monte Carlo with n_draws and seed) or a
    sample array (exact average). Convention 0^0 = 0, so k = 0 gives the
    shortfall probability P(r < target).
    """
    if k < 0.0:
        raise ValueError(f"moment order must be >= 0, got {k!r}")
    if isinstance(model_or_sample, (NormalLossModel, EmpiricalLossModel)):
        from .distributions import sample as _sample
        if isinstance(model_or_sample, EmpiricalLossModel):
            data = model_or_sample.sorted_losses
        else:
            data = _sample(model_or_sample, seed, n_draws)
    else:
        data = np.asarray(model_or_sample, dtype=np.float64)
    d = target - data
    if k == 0.0:
        return float(np.mean(d > 0.0))
    return float(np.mean(np.where(d > 0.0, d, 0.0) ** k))
