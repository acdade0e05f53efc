"""Backend selection for the hot numerical kernels.

The environment variable ``SPECTRALRISK_BACKEND`` picks the implementation:

* ``auto`` (default) - use the numba-jitted kernels when numba imports,
  otherwise fall back to the pure-numpy ones;
* ``numba``          - require the jitted kernels (ImportError if absent);
* ``numpy``          - force the pure-numpy fallback.

Both backends expose the same functions with identical semantics; per run
each backend is fully deterministic.
"""

from __future__ import annotations

import os

_choice = os.environ.get("SPECTRALRISK_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise ImportError(
        f"SPECTRALRISK_BACKEND must be one of auto|numba|numpy, got {_choice!r}")

if _choice == "numpy":
    from . import _kernels_numpy as _impl
    BACKEND = "numpy"
elif _choice == "numba":
    from . import _kernels_numba as _impl
    BACKEND = "numba"
else:
    try:
        from . import _kernels_numba as _impl
        BACKEND = "numba"
    except ImportError:
        from . import _kernels_numpy as _impl
        BACKEND = "numpy"

norm_ppf = _impl.norm_ppf
norm_cdf = _impl.norm_cdf
exp_weights = _impl.exp_weights
weighted_sum = _impl.weighted_sum
weighted_mass = _impl.weighted_mass
van_der_corput_seq = _impl.van_der_corput_seq
weyl_seq = _impl.weyl_seq


def backend_name() -> str:
    """Name of the active kernel backend ("numba" or "numpy")."""
    return BACKEND
