"""Kernel backend selection.

The compiled extension is preferred when it imports and the ring modulus fits
its 64-bit arithmetic; otherwise the pure-Python twin is used.  Set
WITTLAT_PURE=1 to force the fallback (used by the benchmark and the twin
tests).
"""

import os

from . import pure

# compiled kernels reduce each product mod P, so P*P must stay below 2**63
COMPILED_MODULUS_LIMIT = 1 << 31
MAX_DEGREE = 16

_compiled = None
if not os.environ.get("WITTLAT_PURE"):
    try:
        from . import _speedups as _compiled
    except ImportError:
        _compiled = None


def backend_for(modulus, degree):
    """Pick the kernel module for a ring with the given modulus p^N and m."""
    if _compiled is not None and modulus < COMPILED_MODULUS_LIMIT and degree <= MAX_DEGREE:
        return _compiled
    return pure


def available_backends():
    names = ["pure"]
    if _compiled is not None:
        names.append("compiled")
    return names
