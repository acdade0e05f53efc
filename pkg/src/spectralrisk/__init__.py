"""Spectral risk measures for loss distributions.

Quantile-weighted risk measures (exponential spectral risk measures, VaR,
expected shortfall, lower partial moments) computed by pluggable
quadrature rules, with parametric bootstrap confidence intervals. Hot
numerical kernels run under numba when available, with a pure-numpy
fallback selected by the SPECTRALRISK_BACKEND environment variable.
"""

from .bootstrap import (BootstrapConfig, BootstrapResult, bootstrap_ci,
                        bootstrap_trial, derive_trial_seed)
from .distributions import (EmpiricalLossModel, NormalLossModel,
                            STANDARD_NORMAL, empirical_quantile, normal_cdf,
                            normal_pdf, normal_quantile, sample)
from .kernels import backend_name
from .quadrature import (Grid, QuadratureRule, build_grid, integrate_weighted,
                         van_der_corput, weyl_node)
from .riskmeasures import (SRMEstimate, es, es_spectrum_estimate, lpm,
                           reference_srm, srm, var)
from .spectra import (ESSpectrum, ExponentialSpectrum, SpectrumReport,
                      absolute_risk_aversion, es_weight, exp_weight,
                      normalization_constant, relative_risk_aversion, utility,
                      validate_spectrum)

__version__ = "0.1.0"

__all__ = [
    "BootstrapConfig", "BootstrapResult", "bootstrap_ci", "bootstrap_trial",
    "derive_trial_seed", "EmpiricalLossModel", "NormalLossModel",
    "STANDARD_NORMAL", "empirical_quantile", "normal_cdf", "normal_pdf",
    "normal_quantile", "sample", "backend_name", "Grid", "QuadratureRule",
    "build_grid", "integrate_weighted", "van_der_corput", "weyl_node",
    "SRMEstimate", "es", "es_spectrum_estimate", "lpm", "reference_srm",
    "srm", "var", "ESSpectrum", "ExponentialSpectrum", "SpectrumReport",
    "absolute_risk_aversion", "es_weight", "exp_weight",
    "normalization_constant", "relative_risk_aversion", "utility",
    "validate_spectrum", "__version__",
]
