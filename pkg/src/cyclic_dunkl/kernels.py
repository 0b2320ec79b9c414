"""Backend selection for the hot summation kernel.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``CYCLIC_DUNKL_PURE`` is set to a non-empty value other
than ``0``, the numpy implementation takes over.
"""
import os

from . import _pykernels

_force_pure = os.environ.get("CYCLIC_DUNKL_PURE", "") not in ("", "0")

try:
    if _force_pure:
        raise ImportError("pure backend requested")
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"

hyp0f_sum = _impl.hyp0f_sum


def backends():
    """Map of every importable backend name to its module."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
