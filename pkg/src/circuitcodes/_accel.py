"""Backend selection for the hot kernels.

Set ``CIRCUITCODES_DISABLE_NUMBA=1`` to force the vectorized numpy path even
when numba is importable.
"""

import os

_DISABLED = os.environ.get("CIRCUITCODES_DISABLE_NUMBA", "").strip().lower() in (
    "1",
    "true",
    "yes",
    "on",
)

try:
    import numba as _nb
except ImportError:  # pragma: no cover - numba is a declared dependency
    _nb = None

HAVE_NUMBA = _nb is not None
USE_NUMBA = HAVE_NUMBA and not _DISABLED


def njit(fn):
    """Compile with numba when it is importable; otherwise return ``fn`` unchanged.

    This wraps the loop implementations regardless of the env flag, so the
    benchmark can always compare compiled loops against the numpy path.
    """
    if _nb is None:
        return fn
    return _nb.njit(cache=True, nogil=True)(fn)


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
