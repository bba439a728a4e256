"""Backend selection for the generational loop.

The hot loop ships in two interchangeable implementations:

* ``"numba"`` - a jitted kernel (``_kernel.py``), the default when numba
  imports cleanly;
* ``"python"`` - a pure-Python reference composed from the public
  operators.

Both draw from the same SplitMix64 stream in the same documented order, so
for any seed they produce bit-identical traces; the choice only affects
speed. Precedence: explicit ``backend=`` argument, then the
``KNAPSACK_GA_BACKEND`` environment variable, then the default.
"""

from __future__ import annotations

import os
from functools import lru_cache

BACKEND_ENV_VAR = "KNAPSACK_GA_BACKEND"
BACKENDS = ("numba", "python")


@lru_cache(maxsize=1)
def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def resolve_backend(choice: str | None = None) -> str:
    """Resolve the backend name, validating explicit requests.

    An explicit request (argument or environment variable) for ``"numba"``
    fails loudly if numba is unavailable; the default silently falls back
    to ``"python"``.
    """
    requested = choice if choice is not None else os.environ.get(BACKEND_ENV_VAR)
    if requested is None:
        return "numba" if numba_available() else "python"
    if requested not in BACKENDS:
        raise ValueError(
            f"unknown backend {requested!r}; expected one of {', '.join(BACKENDS)}"
        )
    if requested == "numba" and not numba_available():
        raise RuntimeError("numba backend requested but numba is not importable")
    return requested
