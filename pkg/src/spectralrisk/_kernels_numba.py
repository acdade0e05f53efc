"""Numba-jitted twins of the kernels in :mod:`._kernels_numpy`.

Importing this module requires numba. All kernels are serial ``@njit``
loops with compensated (Neumaier) accumulation for the reductions, so
results are deterministic and scheduling-invariant. Polynomial evaluation
order matches the numpy kernels exactly.
"""

from __future__ import annotations

import math

import numba as nb
import numpy as np

_SQRT2 = math.sqrt(2.0)


@nb.njit(cache=True)
def _ppnd16(p):
    # Wichura's AS 241 PPND16, scalar.
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        num = (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r
                    + 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r
                  + 1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r
                + 1.3314166789178437745e2) * r + 3.3871328727963666080e0)
        den = (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r
                    + 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r
                  + 5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r
                + 4.2313330701600911252e1) * r + 1.0)
        return q * num / den
    r = p if q < 0.0 else 1.0 - p
    r = math.sqrt(-math.log(r))
    if r <= 5.0:
        r = r - 1.6
        num = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r
                    + 2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r
                  + 3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r
                + 4.63033784615654529590e0) * r + 1.42343711074968357734e0)
        den = (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r
                    + 1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r
                  + 6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r
                + 2.05319162663775882187e0) * r + 1.0)
        z = num / den
    else:
        r = r - 5.0
        num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r
                    + 1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r
                  + 2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r
                + 5.46378491116411436990e0) * r + 6.65790464350110377720e0)
        den = (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r
                    + 1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r
                  + 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r
                + 5.99832206555887937690e-1) * r + 1.0)
        z = num / den
    return -z if q < 0.0 else z


@nb.njit(cache=True)
def norm_ppf(p):
    p = np.asarray(p, dtype=np.float64)
    out = np.empty_like(p)
    for i in range(p.size):
        out[i] = _ppnd16(p[i])
    return out


@nb.njit(cache=True)
def norm_cdf(z):
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    for i in range(z.size):
        out[i] = 0.5 * math.erfc(-z[i] / _SQRT2)
    return out


@nb.njit(cache=True)
def exp_weights(p, a):
    p = np.asarray(p, dtype=np.float64)
    log_lam = math.log(a) - math.log(-math.expm1(-a))
    out = np.empty_like(p)
    for i in range(p.size):
        out[i] = math.exp(log_lam - a * (1.0 - p[i]))
    return out


@nb.njit(cache=True)
def weighted_sum(weights, spectrum_weights, quantiles):
    # Neumaier compensated accumulation.
    s = 0.0
    c = 0.0
    for i in range(weights.size):
        term = weights[i] * spectrum_weights[i] * quantiles[i]
        t = s + term
        if abs(s) >= abs(term):
            c += (s - t) + term
        else:
            c += (term - t) + s
        s = t
    return s + c


@nb.njit(cache=True)
def weighted_mass(weights, values):
    s = 0.0
    c = 0.0
    for i in range(weights.size):
        term = weights[i] * values[i]
        t = s + term
        if abs(s) >= abs(term):
            c += (s - t) + term
        else:
            c += (term - t) + s
        s = t
    return s + c


@nb.njit(cache=True)
def van_der_corput_seq(n):
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        j = np.uint64(i + 1)
        x = 0.0
        scale = 0.5
        while j > 0:
            x += scale * (j & np.uint64(1))
            j >>= np.uint64(1)
            scale *= 0.5
        out[i] = x
    return out


@nb.njit(cache=True)
def weyl_seq(n):
    c = _SQRT2 - 1.0
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        out[i] = ((i + 1) * c) % 1.0
    return out
