"""Lifting to characteristic zero at finite p-adic precision.

B = (Z/p^k)[u][v] / (v^2 - q(u)) with q = (u^(n-1) + 1)/(u + 1) and n = p^f + 1.
Taking A = Z_p[t] with t = u^n leaves u free, so an element of B is a pair
(a(u), b(u)) meaning a + b*v.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .arith import GF, Ring, Zpk
from .errors import AssignmentAmbiguous, IllDefinedMap, NotSplitModP, RepeatedRootModP
from .poly import Poly, radical_quotient
from .tower import AlgElement, roots_mod_p, sqrt_mod_q


def _check_pf(p: int, f: int, k: int | None = None) -> int:
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    if f < 1:
        raise ValueError("f must be >= 1")
    if k is not None and k < 1:
        raise ValueError("precision k must be >= 1")
    return p**f + 1


class BRing:
    """The rank-2 algebra over (Z/p^k)[u] described above."""

    def __init__(self, p: int, f: int, k: int):
        self.n = _check_pf(p, f, k)
        self.p, self.f, self.k = p, f, k
        self.coeff = Zpk(p, k)
        self.q = radical_quotient(self.coeff, self.n)

    def __repr__(self):
        return f"BRing(p={self.p}, f={self.f}, k={self.k})"

    def __call__(self, a, b=()) -> BElement:
        a = a if isinstance(a, Poly) else Poly(self.coeff, a if isinstance(a, (list, tuple)) else [a])
        b = b if isinstance(b, Poly) else Poly(self.coeff, b)
        return BElement(self, a, b)

    def u(self) -> BElement:
        return self([0, 1])

    def v(self) -> BElement:
        return self([], [1])


class BElement:
    __slots__ = ("ring", "a", "b")

    def __init__(self, ring: BRing, a: Poly, b: Poly):
        self.ring, self.a, self.b = ring, a, b

    def _coerce(self, other) -> BElement:
        if isinstance(other, BElement):
            if other.ring is not self.ring:
                raise TypeError("elements of different B rings")
            return other
        return self.ring(other)

    def __add__(self, other):
        o = self._coerce(other)
        return BElement(self.ring, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return BElement(self.ring, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        a = self.a * o.a + self.b * o.b * self.ring.q
        b = self.a * o.b + self.b * o.a
        return BElement(self.ring, a, b)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = self.ring([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, BElement):
            return NotImplemented
        return self.ring is other.ring and self.a == other.a and self.b == other.b

    __hash__ = None

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def reduce_precision(self, ring: BRing) -> BElement:
        """Image in a lower-precision B with the same p and f."""
        if (ring.p, ring.f) != (self.ring.p, self.ring.f) or ring.k > self.ring.k:
            raise ValueError("target must have the same p, f and lower precision")
        m = ring.coeff.modulus
        return BElement(ring, Poly(ring.coeff, [c % m for c in self.a.coeffs]),
                        Poly(ring.coeff, [c % m for c in self.b.coeffs]))

    def to_json(self) -> dict:
        return {"a": list(self.a.coeffs), "b": list(self.b.coeffs)}

    def __repr__(self):
        return f"BElement(a={self.a}, b={self.b})"


def digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()[:16]


def lifted_point(B: BRing) -> tuple[BElement, BElement]:
    u = B.u()
    return u, u * (u + 1) * B.v()


def lift_residual(B: BRing) -> BElement:
    """y^2 - x(x+1)(x+u^n) at the lifted point."""
    x, y = lifted_point(B)
    t = x**B.n
    return y * y - x * (x + 1) * (x + t)


@dataclass
class LiftReport:
    p: int
    f: int
    k: int
    n: int
    residual_zero: bool
    residual_digest: str

    def to_json(self) -> dict:
        return dict(self.__dict__)


def verify_lift(p: int, f: int, k: int) -> LiftReport:
    B = BRing(p, f, k)
    r = lift_residual(B)
    return LiftReport(p, f, k, B.n, r.is_zero(), digest(r.to_json()))


@dataclass
class ReductionReport:
    p: int
    f: int
    k: int
    n: int
    well_defined: bool
    image: tuple[Poly, Poly]
    ulmer: tuple[Poly, Poly]

    @property
    def matches(self) -> bool:
        return self.well_defined and self.image == self.ulmer

    def to_json(self) -> dict:
        return {
            "p": self.p, "f": self.f, "k": self.k, "n": self.n,
            "well_defined": self.well_defined,
            "matches": self.matches,
            "image": [list(c.coeffs) for c in self.image],
        }


def _to_fp(B: BRing, e: BElement, w: Poly) -> Poly:
    F = GF(B.p)
    a = Poly(F, [c % B.p for c in e.a.coeffs])
    b = Poly(F, [c % B.p for c in e.b.coeffs])
    return a + b * w


def reduce_mod_p(p: int, f: int, k: int) -> ReductionReport:
    """Map B mod p^k to F_p[u] with v -> (u+1)^((p^f-1)/2) and compare the
    image of the lifted point with (u, u(u+1)^((p^f+1)/2))."""
    B = BRing(p, f, k)
    F = GF(p)
    u1 = Poly(F, [1, 1])
    w = u1 ** ((p**f - 1) // 2)
    ok = (w * w - radical_quotient(F, B.n)).is_zero()
    if not ok:
        raise IllDefinedMap(f"(u+1)^(p^f-1) differs from q(u) over F_{p}")
    x, y = lifted_point(B)
    image = (_to_fp(B, x, w), _to_fp(B, y, w))
    ux = Poly.x(F)
    ulmer = (ux, ux * u1 ** ((p**f + 1) // 2))
    return ReductionReport(p, f, k, B.n, ok, image, ulmer)


def precision_compatible(p: int, f: int, k: int) -> bool:
    """Lifted point and residual computed mod p^k reduce to those computed mod p^(k-1)."""
    if k < 2:
        raise ValueError("need k >= 2")
    hi, lo = BRing(p, f, k), BRing(p, f, k - 1)
    xs_hi, xs_lo = lifted_point(hi), lifted_point(lo)
    same_pt = all(a.reduce_precision(lo) == b for a, b in zip(xs_hi, xs_lo))
    y2_hi = xs_hi[1] * xs_hi[1]
    y2_lo = xs_lo[1] * xs_lo[1]
    return same_pt and y2_hi.reduce_precision(lo) == y2_lo and \
        lift_residual(hi).reduce_precision(lo) == lift_residual(lo)


# -- Hensel lifting -------------------------------------------------------------


def _monic_ints(coeffs, p: int, k: int) -> list[int]:
    m = p**k
    c = [int(x) % m for x in (coeffs.coeffs if isinstance(coeffs, Poly) else coeffs)]
    while c and c[-1] == 0:
        c.pop()
    if len(c) != 4:
        raise ValueError("expected a cubic")
    if c[3] % p == 0:
        raise ValueError("leading coefficient is not a unit mod p")
    inv = pow(c[3], -1, m)
    return [x * inv % m for x in c]


def _ev(c: list[int], x: int, m: int) -> int:
    acc = 0
    for a in reversed(c):
        acc = (acc * x + a) % m
    return acc


def newton_lift(c: list[int], r: int, p: int, k: int) -> int:
    """Lift a simple root r mod p of the polynomial c to Z/p^k, doubling the
    precision each step."""
    dc = [i * a for i, a in enumerate(c)][1:]
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        m = p**prec
        d = _ev(dc, r, m)
        if d % p == 0:
            raise RepeatedRootModP(f"root {r % p} is not simple mod {p}")
        r = (r - _ev(c, r, m) * pow(d, -1, m)) % m
    return r % p**k


def hensel_cubic(coeffs, p: int, k: int) -> list[int]:
    """Three roots in Z/p^k of a cubic with distinct roots mod p, ordered by
    their residues mod p."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    c = _monic_ints(coeffs, p, k)
    a0, a1, a2 = c[0], c[1], c[2]
    disc = a2 * a2 * a1 * a1 - 4 * a1**3 - 4 * a2**3 * a0 - 27 * a0 * a0 + 18 * a2 * a1 * a0
    if disc % p == 0:
        raise RepeatedRootModP(f"discriminant vanishes mod {p}")
    roots = roots_mod_p([x % p for x in c], p)
    if len(roots) != 3:
        raise NotSplitModP(f"cubic has {len(roots)} roots mod {p}")
    return [newton_lift(c, r, p, k) for r in roots]


def hensel_sqrt(d: int, p: int, k: int) -> int | None:
    """Square root of a unit d in Z/p^k lifting the root mod p, or None."""
    m = p**k
    if d % p == 0:
        raise ValueError("d must be a unit")
    r = sqrt_mod_q(AlgElement(GF(p), d % p))
    if r is None:
        return None
    return newton_lift([(-d) % m, 0, 1], r.raw, p, k)


@dataclass
class Normalization:
    p: int
    k: int
    a: int
    b: int
    c: int
    lam: int
    scale_sq: int
    scale: int | None
    extension: str | None = None

    def model_ok(self) -> bool:
        """(x+a)(x+b)(x+c) at x = -a + dX equals d^3 X(X+1)(X+lam), d = b - a."""
        R = Zpk(self.p, self.k)
        d = self.scale_sq
        X = Poly.x(R)
        x = Poly(R, [-self.a, d])
        lhs = (x + self.a) * (x + self.b) * (x + self.c)
        rhs = X * (X + 1) * (X + self.lam) * pow(d, 3, R.modulus)
        ok = lhs == rhs and self.lam % self.p == (self.c - self.a) * pow(self.b - self.a, -1, self.p) % self.p
        if self.scale is not None:
            ok = ok and pow(self.scale, 2, R.modulus) == d % R.modulus
        return ok


def legendre_normalize(roots, lam_mod_p: int, p: int, k: int) -> Normalization:
    """Bring y^2 = (x-e1)(x-e2)(x-e3) to Legendre form over Z/p^k.

    With a = -e for each root, slots are fixed by a = 0, b = 1, c = lam mod p.
    Then lam~ = (c-a)/(b-a); the y-rescaling needs sqrt(b-a), lifted by Hensel
    when it exists mod p, otherwise recorded as a quadratic extension step.
    """
    m = p**k
    lam_p = lam_mod_p % p
    if lam_p in (0, 1):
        raise AssignmentAmbiguous(f"lambda = {lam_p} mod {p} does not separate the slots")
    slots = {}
    for e in roots:
        neg = (-int(e)) % m
        slots.setdefault(neg % p, []).append(neg)
    try:
        (a,), (b,), (c,) = slots[0], slots[1], slots[lam_p]
    except (KeyError, ValueError):
        raise AssignmentAmbiguous(f"roots do not reduce to 0, -1, -{lam_p} mod {p}") from None
    d = (b - a) % m
    lam = (c - a) * pow(d, -1, m) % m
    s = hensel_sqrt(d, p, k)
    ext = None if s is not None else f"s^2 = {d}"
    return Normalization(p, k, a, b, c, lam, d, s, ext)
