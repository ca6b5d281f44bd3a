"""Hot finite-field loops, compiled when available.

The Cython extension ``_ckernels`` is used if it was built; otherwise the
pure-Python ``_pykernels`` is used.  Set ``LEGENDRE_TOWER_PURE=1`` to force
the fallback.
"""

import os

from . import _pykernels

try:
    if os.environ.get("LEGENDRE_TOWER_PURE"):
        raise ImportError("pure-Python kernels requested")
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"

_PY_LIMIT = 1 << 31


def poly_mul_mod(a, b, m):
    if BACKEND == "cython" and m < _PY_LIMIT:
        return _impl.poly_mul_mod(a, b, m)
    return _pykernels.poly_mul_mod(a, b, m)


def count_points_fp(a2, a4, a6, p):
    if BACKEND == "cython" and p < _PY_LIMIT:
        return _impl.count_points_fp(a2, a4, a6, p)
    return _pykernels.count_points_fp(a2, a4, a6, p)
