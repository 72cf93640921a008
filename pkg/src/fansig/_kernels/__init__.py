"""Hot inner kernels with a compiled core and a pure-Python fallback.

The compiled module ``_native`` is used when it was built and importable;
otherwise the pure-Python twins in ``_pure`` are used. Set the environment
variable ``FANSIG_PURE_PYTHON=1`` before import to force the fallback.

Both backends compute identical results. The compiled kernels work in 64-bit
integers and raise ``OverflowError`` on overflow, in which case the call is
transparently retried on the pure kernel with unbounded integers.
"""

from __future__ import annotations

import os

from . import _pure

try:
    if os.environ.get("FANSIG_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python forced by FANSIG_PURE_PYTHON")
    from . import _native
except ImportError:
    _native = None

BACKEND = "native" if _native is not None else "python"


def echelon(rows, ncols: int):
    if _native is not None:
        try:
            return _native.echelon(rows, ncols)
        except OverflowError:
            pass
    return _pure.echelon(rows, ncols)


def zeta_sum(coords, exps):
    if _native is not None:
        try:
            return _native.zeta_sum(coords, exps)
        except OverflowError:
            pass
    return _pure.zeta_sum(coords, exps)


__all__ = ["BACKEND", "echelon", "zeta_sum"]
