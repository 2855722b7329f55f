"""Backend selection for the hot kernels.

Prefers the compiled extension, falls back to the numpy implementations.
ROTOBLOCH_BACKEND=pure or =compiled forces the choice (the latter raises
if the extension was not built).
"""

import os

from . import _fallback

_requested = os.environ.get("ROTOBLOCH_BACKEND", "")

if _requested == "pure":
    _impl = _fallback
    BACKEND = "pure"
else:
    try:
        from . import _kernels as _impl

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        _impl = _fallback
        BACKEND = "pure"


def backend_name() -> str:
    return BACKEND


def revival_alignment(c, levels, d, o, samples):
    return _impl.revival_alignment(c, levels, d, o, samples)


def rk4_semiclassical(P, delta, j0, k0, n_max, dn, k_threshold):
    return _impl.rk4_semiclassical(P, delta, j0, k0, n_max, dn, k_threshold)
