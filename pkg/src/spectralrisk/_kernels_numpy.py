"""Pure-NumPy implementations of the hot numerical kernels.

This is the fallback path used when numba is unavailable or disabled via
``SPECTRALRISK_BACKEND=numpy``. The jitted twins in :mod:`._kernels_numba`
use the same polynomial evaluation order, so the two backends agree to
within a few ulps on every kernel.

``norm_ppf`` implements Wichura's PPND16 rational approximation (AS 241),
accurate to roughly 1e-15 absolute over p in [1e-300, 1 - 1e-16].
"""

from __future__ import annotations

import numpy as np
from scipy.special import erfc as _erfc

_SQRT2 = np.sqrt(2.0)

# AS 241 PPND16 coefficients, central region |p - 0.5| <= 0.425.
_A = (3.3871328727963666080e0, 1.3314166789178437745e2,
      1.9715909503065514427e3, 1.3731693765509461125e4,
      4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4, 2.5090809287301226727e3)
_B = (1.0, 4.2313330701600911252e1,
      6.8718700749205790830e2, 5.3941960214247511077e3,
      2.1213794301586595867e4, 3.9307895800092710610e4,
      2.8729085735721942674e4, 5.2264952788528545610e3)
# Tail region r = sqrt(-log(min(p, 1-p))), 1.6 < r <= 5.
_C = (1.42343711074968357734e0, 4.63033784615654529590e0,
      5.76949722146069140550e0, 3.64784832476320460504e0,
      1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4)
_D = (1.0, 2.05319162663775882187e0,
      1.67638483018380384940e0, 6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2,
      5.47593808499534494600e-4, 1.05075007164441684324e-9)
# Far tail r > 5, valid down to p ~ 1e-316.
_E = (6.65790464350110377720e0, 5.46378491116411436990e0,
      1.78482653991729133580e0, 2.96560571828504891230e-1,
      2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7)
_F = (1.0, 5.99832206555887937690e-1,
      1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5,
      1.42151175831644588870e-7, 2.04426310338993978564e-15)


def _ratpoly(r, num, den):
    # Horner, highest order first; identical ordering to the numba kernel.
    p = num[7]
    for c in (num[6], num[5], num[4], num[3], num[2], num[1], num[0]):
        p = p * r + c
    q = den[7]
    for c in (den[6], den[5], den[4], den[3], den[2], den[1], den[0]):
        q = q * r + c
    return p / q


def norm_ppf(p: np.ndarray) -> np.ndarray:
    """Inverse standard normal CDF, elementwise (AS 241 PPND16)."""
    p = np.asarray(p, dtype=np.float64)
    z = np.empty_like(p)
    q = p - 0.5

    central = np.abs(q) <= 0.425
    if central.any():
        qc = q[central]
        r = 0.180625 - qc * qc
        z[central] = qc * _ratpoly(r, _A, _B)

    tail = ~central
    if tail.any():
        qt = q[tail]
        r = np.where(qt < 0.0, p[tail], 1.0 - p[tail])
        r = np.sqrt(-np.log(r))
        zt = np.empty_like(r)
        mid = r <= 5.0
        if mid.any():
            zt[mid] = _ratpoly(r[mid] - 1.6, _C, _D)
        far = ~mid
        if far.any():
            zt[far] = _ratpoly(r[far] - 5.0, _E, _F)
        z[tail] = np.where(qt < 0.0, -zt, zt)
    return z


def norm_cdf(z: np.ndarray) -> np.ndarray:
    """Standard normal CDF, elementwise, via the complementary error function."""
    z = np.asarray(z, dtype=np.float64)
    return 0.5 * _erfc(-z / _SQRT2)


def exp_weights(p: np.ndarray, a: float) -> np.ndarray:
    """Exponential risk-aversion weights lambda * exp(-a(1-p)), log-space.

    Evaluated as exp(log lambda - a(1-p)) so large a never overflows.
    """
    p = np.asarray(p, dtype=np.float64)
    log_lam = np.log(a) - np.log(-np.expm1(-a))
    return np.exp(log_lam - a * (1.0 - p))


def weighted_sum(weights: np.ndarray, spectrum_weights: np.ndarray,
                 quantiles: np.ndarray) -> float:
    """sum_j weights[j] * spectrum_weights[j] * quantiles[j].

    np.sum uses pairwise accumulation, which keeps 1e7-term sums accurate.
    """
    return float(np.sum(weights * spectrum_weights * quantiles))


def weighted_mass(weights: np.ndarray, values: np.ndarray) -> float:
    """sum_j weights[j] * values[j] (pairwise accumulation)."""
    return float(np.sum(weights * values))


def van_der_corput_seq(n: int) -> np.ndarray:
    """First n terms of the base-2 radical-inverse sequence (indices 1..n)."""
    idx = np.arange(1, n + 1, dtype=np.uint64)
    out = np.zeros(n, dtype=np.float64)
    scale = 0.5
    while idx.any():
        out += scale * (idx & np.uint64(1))
        idx >>= np.uint64(1)
        scale *= 0.5
    return out


def weyl_seq(n: int) -> np.ndarray:
    """First n terms of the sqrt(2)-based Weyl sequence frac(j*(sqrt(2)-1))."""
    c = _SQRT2 - 1.0
    return (np.arange(1, n + 1, dtype=np.float64) * c) % 1.0
