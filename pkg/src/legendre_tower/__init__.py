"""Rational points on Legendre curves over radical and solvable towers.

Exact tower arithmetic with dynamic evaluation, the elliptic group law over
tower levels, infinite-order certificates by reduction, and finite-precision
p-adic lifting checks.
"""

__version__ = "0.1.0"

from .kernels import BACKEND  # noqa: E402

__all__ = ["BACKEND", "__version__"]
