"""Optional numba acceleration.

Set ``PSBCK_DISABLE_NUMBA=1`` to run every kernel as plain Python/numpy.
"""

import functools
import os

NUMBA_ENABLED = os.environ.get("PSBCK_DISABLE_NUMBA", "0") not in ("1", "true", "yes")

if NUMBA_ENABLED:
    try:
        import numba as _nb
    except ImportError:  # pragma: no cover
        NUMBA_ENABLED = False

if NUMBA_ENABLED:
    njit = functools.partial(_nb.njit, cache=True, nogil=True)
else:

    def njit(fn=None, **_kwargs):
        if fn is None:
            return lambda f: f
        return fn
