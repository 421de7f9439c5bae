"""Kernel backend selection.

The compiled ``_speedups`` extension is used when it imports; otherwise, or when
``APNEXT_PURE_PYTHON=1`` is set, the numpy fallback in ``_purepy`` is used.
Both expose ``solve_affine``, ``rank``, ``differential_uniformity``,
``walsh_transform`` and ``linearity`` with identical results.
"""

import os

from . import _purepy

if os.environ.get("APNEXT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _purepy
else:
    try:
        from . import _speedups as _impl
    except ImportError:  # extension not built
        _impl = _purepy

BACKEND = _impl.BACKEND
solve_affine = _impl.solve_affine
rank = _impl.rank
differential_uniformity = _impl.differential_uniformity
walsh_transform = _impl.walsh_transform
linearity = _impl.linearity


def available_backends():
    out = {"python": _purepy}
    try:
        from . import _speedups
    except ImportError:
        pass
    else:
        out["cython"] = _speedups
    return out
