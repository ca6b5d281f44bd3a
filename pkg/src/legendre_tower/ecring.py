"""Elliptic curves y^2 = x^3 + a2 x^2 + a4 x + a6 over any tower level.

Affine coordinates with exact division.  In a tower that is not a field a
slope denominator can be a zero divisor; the inversion then raises
:class:`~legendre_tower.errors.ZeroDivisorWitness` and the caller splits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from . import kernels
from .arith import PrimeField, Ring
from .errors import SingularCurve
from .tower import AlgElement, _elements


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Infinity"

    def map_elements(self, fn):
        return self

    def to_json(self):
        return "infinity"


Infinity = _Infinity()


class Point(NamedTuple):
    x: AlgElement
    y: AlgElement

    def map_elements(self, fn):
        return Point(fn(self.x), fn(self.y))

    def to_json(self):
        return {"x": self.x.to_json(), "y": self.y.to_json()}


@dataclass(frozen=True)
class CurveModel:
    """y^2 = x^3 + a2 x^2 + a4 x + a6; ``lam`` is set for Legendre models."""

    ring: Ring
    a2: AlgElement
    a4: AlgElement
    a6: AlgElement
    lam: AlgElement | None = None

    @classmethod
    def legendre(cls, lam, ring: Ring | None = None) -> CurveModel:
        """y^2 = x(x+1)(x+lam)."""
        if ring is None:
            ring = lam.ring
        lam = AlgElement.of(ring, lam)
        zero = AlgElement(ring, ring.zero)
        return cls(ring, lam + 1, lam, zero, lam)

    @classmethod
    def general(cls, a2, a4, a6, ring: Ring) -> CurveModel:
        return cls(ring, AlgElement.of(ring, a2), AlgElement.of(ring, a4), AlgElement.of(ring, a6))

    @property
    def is_legendre(self) -> bool:
        return self.lam is not None

    def rhs(self, x: AlgElement) -> AlgElement:
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def point(self, x, y) -> Point:
        return Point(AlgElement.of(self.ring, x), AlgElement.of(self.ring, y))

    def over(self, ring: Ring) -> CurveModel:
        lam = None if self.lam is None else self.lam.lift_to(ring)
        return CurveModel(ring, self.a2.lift_to(ring), self.a4.lift_to(ring), self.a6.lift_to(ring), lam)

    def map_elements(self, fn):
        a2, a4, a6 = fn(self.a2), fn(self.a4), fn(self.a6)
        lam = None if self.lam is None else fn(self.lam)
        return CurveModel(a2.ring, a2, a4, a6, lam)

    def to_json(self) -> dict:
        if self.lam is not None:
            return {"kind": "legendre", "lambda": self.lam.to_json()}
        return {"kind": "cubic", "a2": self.a2.to_json(), "a4": self.a4.to_json(), "a6": self.a6.to_json()}


def discriminant(m: CurveModel) -> AlgElement:
    """16 times the discriminant of the cubic; 16 lam^2 (lam-1)^2 for Legendre models."""
    if m.lam is not None:
        lam = m.lam
        return 16 * lam * lam * (lam - 1) * (lam - 1)
    a, b, c = m.a2, m.a4, m.a6
    disc = a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c
    return 16 * disc


def on_curve(m: CurveModel, P) -> AlgElement:
    """y^2 - cubic(x) at P; zero iff P lies on the curve."""
    if P is Infinity:
        return AlgElement(m.ring, m.ring.zero)
    x, y = P
    return y * y - m.rhs(x)


def neg(m: CurveModel, P):
    if P is Infinity:
        return P
    return Point(P.x, -P.y)


def add(m: CurveModel, P, Q):
    """Chord-tangent sum."""
    if P is Infinity:
        return Q
    if Q is Infinity:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2).is_zero():
            return Infinity
        if y1 == y2:
            slope = (3 * x1 * x1 + 2 * m.a2 * x1 + m.a4) / (2 * y1)
        else:
            # y1^2 = y2^2 with y1 != +-y2 only happens in a non-field; this
            # inversion raises the zero-divisor witness needed to split.
            (y1 - y2).inverse()
            raise ValueError("points with equal x but unrelated y; not on the curve?")
    else:
        slope = (y2 - y1) / (x2 - x1)
    x3 = slope * slope - m.a2 - x1 - x2
    y3 = slope * (x1 - x3) - y1
    return Point(x3, y3)


def double(m: CurveModel, P):
    return add(m, P, P)


def scalar_mul(m: CurveModel, k: int, P):
    """k*P by double-and-add; negative k multiplies the negated point."""
    if k < 0:
        return scalar_mul(m, -k, neg(m, P))
    result = Infinity
    addend = P
    while k:
        if k & 1:
            result = add(m, result, addend)
        k >>= 1
        if k:
            addend = add(m, addend, addend)
    return result


MAX_COUNT_FIELD = 10**6


def count_points(m: CurveModel) -> int:
    """#E(F_q) by summing the quadratic character over all x, q <= 10^6."""
    ring = m.ring
    q = ring.cardinality
    if q is None or not isinstance(ring.base, PrimeField):
        raise TypeError("count_points needs a finite field level")
    if q > MAX_COUNT_FIELD:
        raise ValueError(f"field of size {q} is too large for naive counting")
    if discriminant(m).is_zero():
        raise SingularCurve("discriminant vanishes")
    if isinstance(ring, PrimeField):
        return kernels.count_points_fp(m.a2.raw, m.a4.raw, m.a6.raw, q)
    e = (q - 1) // 2
    one = AlgElement(ring, ring.one)
    total = 1
    xs = [AlgElement(ring, ring.zero)]
    for x in xs + list(_elements(ring)):
        f = m.rhs(x)
        if f.is_zero():
            total += 1
        elif f**e == one:
            total += 2
    return total


def hasse_ok(count: int, q: int) -> bool:
    return (count - q - 1) ** 2 <= 4 * q


def two_torsion(m: CurveModel) -> list[Point]:
    """(0,0), (-1,0), (-lam,0) on a Legendre model."""
    if m.lam is None:
        raise ValueError("two_torsion is defined for Legendre models")
    zero = AlgElement(m.ring, m.ring.zero)
    return [Point(zero, zero), Point(zero - 1, zero), Point(-m.lam, zero)]


def order_of(m: CurveModel, P, bound: int) -> int | None:
    """Smallest k <= bound with kP = O, or None."""
    Q = P
    for k in range(1, bound + 1):
        if Q is Infinity:
            return k
        Q = add(m, Q, P)
    return None


def isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None
