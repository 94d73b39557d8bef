"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the
pure-Python kernel. ``PARAKAHLER_BACKEND=python`` forces the fallback.
"""
import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    BACKENDS["cython"] = _compiled

if os.environ.get("PARAKAHLER_BACKEND", "").lower() == "python" or _compiled is None:
    default = _kernels_py
else:
    default = _compiled


def get(name=None):
    """Return the kernel module called ``name`` (default backend if None)."""
    if name is None:
        return default
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
