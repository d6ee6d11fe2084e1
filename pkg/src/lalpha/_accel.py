"""Backend selection for the hot kernels.

Set ``LALPHA_DISABLE_NUMBA=1`` to force the pure-numpy path. Numba is also
skipped silently when it cannot be imported.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_AVAILABLE = numba is not None
NUMBA_DISABLED = os.environ.get("LALPHA_DISABLE_NUMBA", "").strip().lower() in {
    "1",
    "true",
    "yes",
    "on",
}
USE_NUMBA = NUMBA_AVAILABLE and not NUMBA_DISABLED


def njit(*args, **kwargs):
    """``numba.njit`` with on-disk caching, or a no-op when numba is absent."""
    if numba is None:
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn
    kwargs.setdefault("cache", True)
    return numba.njit(*args, **kwargs)
