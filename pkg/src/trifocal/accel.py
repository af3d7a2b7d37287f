"""Backend selection for the hot grid kernels.

Set TRIFOCAL_PURE_NUMPY=1 to force the pure-numpy fallback path; otherwise
numba-compiled kernels are used when numba imports cleanly.  The choice is
made once at import time so a process never mixes paths.
"""

import os

_ENV_FLAG = "TRIFOCAL_PURE_NUMPY"

_forced_numpy = os.environ.get(_ENV_FLAG, "").strip().lower() in ("1", "true", "yes", "on")

if _forced_numpy:
    NUMBA_ENABLED = False
    njit = None
    prange = range
else:
    try:
        import warnings

        # Old TBB installs trigger a loud fallback notice; numba silently
        # picks the next threading layer, so the warning is pure noise.
        warnings.filterwarnings(
            "ignore", message="The TBB threading layer requires TBB version"
        )
        from numba import njit as _numba_njit
        from numba import prange as _numba_prange

        njit = _numba_njit
        prange = _numba_prange
        NUMBA_ENABLED = True
    except ImportError:
        njit = None
        prange = range
        NUMBA_ENABLED = False


def backend_name() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"
