"""Dense univariate polynomials over any coefficient ring.

Coefficients are raw ring values, constant term first, with trailing zeros
stripped so the zero polynomial is the empty tuple.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .arith import QQ, ZZ, Ring
from .errors import NonUnitLeadingCoefficient, ZeroDivisorWitness


def _trim(ring: Ring, coeffs) -> tuple:
    c = list(coeffs)
    while c and ring.is_zero(c[-1]):
        c.pop()
    return tuple(c)


class Poly:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: Ring, coeffs=(), *, raw: bool = False):
        self.ring = ring
        if raw:
            self.coeffs = _trim(ring, coeffs)
        else:
            self.coeffs = _trim(ring, [ring.coerce(c) for c in coeffs])

    @classmethod
    def monomial(cls, ring: Ring, degree: int, coeff=None) -> Poly:
        c = ring.one if coeff is None else ring.coerce(coeff)
        return cls(ring, [ring.zero] * degree + [c], raw=True)

    @classmethod
    def x(cls, ring: Ring) -> Poly:
        return cls.monomial(ring, 1)

    @classmethod
    def const(cls, ring: Ring, c) -> Poly:
        return cls(ring, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.one

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero

    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise TypeError("polynomials over different rings")
            return other
        return Poly(self.ring, [other])

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.coeffs == other.coeffs
        try:
            return self.coeffs == Poly(self.ring, [other]).coeffs
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._lift(other)
        r = self.ring
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = r.add(out[i], c)
        return Poly(r, out, raw=True)

    __radd__ = __add__

    def __neg__(self):
        r = self.ring
        return Poly(r, [r.neg(c) for c in self.coeffs], raw=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.coerce(other)
            return self.scale(c)
        other = self._lift(other)
        return Poly(self.ring, self.ring.convolve(self.coeffs, other.coeffs), raw=True)

    __rmul__ = __mul__

    def scale(self, c) -> Poly:
        r = self.ring
        if r.is_zero(c):
            return Poly(r)
        return Poly(r, [r.mul(x, c) for x in self.coeffs], raw=True)

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Poly(self.ring, [self.ring.one], raw=True)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, x):
        """Horner evaluation at a raw value of the coefficient ring."""
        r = self.ring
        acc = r.zero
        for c in reversed(self.coeffs):
            acc = r.add(r.mul(acc, x), c)
        return acc

    def eval_with(self, x, add, mul, embed, zero):
        """Horner evaluation in another ring given its operations."""
        acc = zero
        for c in reversed(self.coeffs):
            acc = add(mul(acc, x), embed(c))
        return acc

    def derivative(self) -> Poly:
        r = self.ring
        return Poly(r, [r.mul(r.from_int(i), c) for i, c in enumerate(self.coeffs)][1:], raw=True)

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        return self.scale(_unit_inverse(self.ring, self.lc))

    def map(self, ring: Ring, fn) -> Poly:
        return Poly(ring, [fn(c) for c in self.coeffs], raw=True)

    def __divmod__(self, other):
        return divrem(self, self._lift(other))

    def __floordiv__(self, other):
        return divrem(self, self._lift(other))[0]

    def __mod__(self, other):
        return divrem(self, self._lift(other))[1]

    def pow_mod(self, e: int, modulus: Poly) -> Poly:
        result = Poly(self.ring, [self.ring.one], raw=True) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            e >>= 1
            if e:
                base = (base * base) % modulus
        return result

    def __repr__(self):
        return f"Poly({self.ring!r}, {list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if self.ring.is_zero(c):
                continue
            cs = self.ring.fmt(c)
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if not mono:
                terms.append(cs)
            elif c == self.ring.one:
                terms.append(mono)
            else:
                terms.append(f"({cs})*{mono}")
        return " + ".join(terms)


def _unit_inverse(ring: Ring, c):
    try:
        return ring.inv(c)
    except ZeroDivisorWitness:
        raise
    except (ArithmeticError, ZeroDivisionError) as exc:
        raise NonUnitLeadingCoefficient(f"{ring.fmt(c)} is not a unit") from exc


def divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Division with remainder ``a = q*b + r``, ``deg r < deg b``.

    The leading coefficient of ``b`` must be a unit of the coefficient ring.
    """
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    r = a.ring
    db = b.degree
    if a.degree < db:
        return Poly(r), a
    lc_inv = r.one if b.lc == r.one else _unit_inverse(r, b.lc)
    rem = list(a.coeffs)
    quot = [r.zero] * (a.degree - db + 1)
    bc = b.coeffs
    for k in range(a.degree - db, -1, -1):
        c = rem[k + db]
        if r.is_zero(c):
            continue
        c = r.mul(c, lc_inv)
        quot[k] = c
        for j in range(db):
            if not r.is_zero(bc[j]):
                rem[k + j] = r.minus(rem[k + j], r.mul(c, bc[j]))
        rem[k + db] = r.zero
    return Poly(r, quot, raw=True), Poly(r, rem[:db], raw=True)


def exact_quotient(a: Poly, b: Poly) -> Poly:
    q, rem = divrem(a, b)
    if not rem.is_zero():
        raise ArithmeticError(f"{b} does not divide {a}")
    return q


def gcd_ext(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Monic ``g = gcd(a, b)`` with ``s*a + t*b = g``.

    Needs every leading coefficient met along the way to be invertible; a
    tower level that is not a field raises :class:`ZeroDivisorWitness`.
    """
    r = a.ring
    one, zero = Poly(r, [r.one], raw=True), Poly(r)
    if a.is_zero() and b.is_zero():
        return zero, zero, zero
    r0, s0, t0 = a, one, zero
    r1, s1, t1 = b, zero, one
    while not r1.is_zero():
        q, rem = divrem(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
        if not r1.is_zero() and r1.lc != r.one:
            inv = _unit_inverse(r, r1.lc)
            r1, s1, t1 = r1.scale(inv), s1.scale(inv), t1.scale(inv)
    inv = _unit_inverse(r, r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def gcd(a: Poly, b: Poly) -> Poly:
    return gcd_ext(a, b)[0]


def pseudo_rem(a: Poly, b: Poly) -> Poly:
    """``lc(b)^(deg a - deg b + 1) * a mod b`` without divisions."""
    r = a.ring
    rem = list(a.coeffs)
    db = b.degree
    lc = b.lc
    delta = a.degree - db + 1
    if delta <= 0:
        return a
    for k in range(a.degree - db, -1, -1):
        c = rem[k + db]
        rem = [r.mul(x, lc) for x in rem]
        if not r.is_zero(c):
            for j in range(db):
                rem[k + j] = r.minus(rem[k + j], r.mul(c, b.coeffs[j]))
        rem[k + db] = r.zero
        delta -= 1
    rem = rem[:db]
    return Poly(r, rem, raw=True)


def _content(p: Poly) -> int:
    return math.gcd(*p.coeffs) if p.coeffs else 0


def _subresultant_zz(A: Poly, B: Poly) -> int:
    s = 1
    if A.degree < B.degree:
        A, B = B, A
        if A.degree % 2 and B.degree % 2:
            s = -s
    a, b = _content(A), _content(B)
    A = Poly(ZZ, [c // a for c in A.coeffs], raw=True)
    B = Poly(ZZ, [c // b for c in B.coeffs], raw=True)
    t = a ** B.degree * b ** A.degree
    g = h = 1
    while True:
        delta = A.degree - B.degree
        if A.degree % 2 and B.degree % 2:
            s = -s
        R = pseudo_rem(A, B)
        A = B
        div = g * h**delta
        B = Poly(ZZ, [ZZ.exact_div(c, div) for c in R.coeffs], raw=True)
        g = A.lc
        if delta:
            h = ZZ.exact_div(g**delta, h ** (delta - 1))
        if B.is_zero():
            return 0
        if B.degree == 0:
            break
    da = A.degree
    h = ZZ.exact_div(B.lc**da, h ** (da - 1)) if da else h
    return s * t * h


def resultant(f: Poly, g: Poly):
    """Res(f, g) = lc(f)^deg(g) * prod g(alpha) over the roots alpha of f.

    Over QQ and ZZ this clears denominators and runs the subresultant
    pseudo-remainder sequence over Z; over fields it uses the Euclidean
    recurrence.
    """
    r = f.ring
    if f.is_zero() or g.is_zero():
        return r.zero
    if f.degree == 0 and g.degree == 0:
        return r.one
    if f.degree == 0:
        return r.pow(f.lc, g.degree)
    if g.degree == 0:
        return r.pow(g.lc, f.degree)
    if r is QQ or r is ZZ:
        cf = math.lcm(*(Fraction(c).denominator for c in f.coeffs))
        cg = math.lcm(*(Fraction(c).denominator for c in g.coeffs))
        F = Poly(ZZ, [int(c * cf) for c in f.coeffs], raw=True)
        G = Poly(ZZ, [int(c * cg) for c in g.coeffs], raw=True)
        res = _subresultant_zz(F, G)
        if r is ZZ:
            return res
        return Fraction(res, cf ** g.degree * cg ** f.degree)
    return _resultant_field(f, g)


def _resultant_field(f: Poly, g: Poly):
    r = f.ring
    result = r.one
    while True:
        m, n = f.degree, g.degree
        if n == 0:
            return r.mul(result, r.pow(g.lc, m))
        _, rem = divrem(f, g)
        if rem.is_zero():
            return r.zero
        # Res(f, g) = (-1)^(mn) lc(g)^(m - deg rem) Res(g, rem)
        factor = r.pow(g.lc, m - rem.degree)
        if (m * n) % 2:
            factor = r.neg(factor)
        result = r.mul(result, factor)
        f, g = g, rem


def from_ints(ring: Ring, coeffs) -> Poly:
    return Poly(ring, coeffs)


def x_pow_minus(ring: Ring, n: int, c) -> Poly:
    """X^n - c."""
    coeffs = [ring.zero] * (n + 1)
    coeffs[0] = ring.neg(ring.coerce(c))
    coeffs[n] = ring.one
    return Poly(ring, coeffs, raw=True)


def radical_quotient(ring: Ring, n: int) -> Poly:
    """(X^(n-1) + 1) / (X + 1) for even n, as an exact polynomial quotient."""
    num = Poly(ring, [ring.one] + [ring.zero] * (n - 2) + [ring.one], raw=True)
    return exact_quotient(num, Poly(ring, [ring.one, ring.one], raw=True))
