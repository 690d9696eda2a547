"""Numba availability and opt-out handling.

Hot kernels in :mod:`forgevqe._kernels` are compiled with ``numba.njit``
when possible. Setting the environment variable ``FORGEVQE_NUMBA=0``
(before import) forces the pure-numpy fallback path; the same happens
automatically when numba is not installed. Both paths produce identical
results up to floating-point rounding.
"""
import os

NUMBA_ENV_VAR = "FORGEVQE_NUMBA"

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None
    HAS_NUMBA = False


def numba_requested() -> bool:
    return os.environ.get(NUMBA_ENV_VAR, "1").strip().lower() not in (
        "0",
        "false",
        "no",
        "off",
    )


USE_NUMBA = HAS_NUMBA and numba_requested()


def set_num_threads(n: int) -> None:
    """Set the numba threading layer size; no-op on the numpy path."""
    if HAS_NUMBA and n >= 1:
        import numba

        numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))
