"""Exact integers, rationals and residues, plus the base coefficient rings.

Python ints are the arbitrary-precision integers and
:class:`fractions.Fraction` the reduced rationals.  Every ring object below
exposes the same small protocol (``zero``, ``one``, ``add``, ``minus``, ``neg``,
``mul``, ``inv``, ``is_zero``, ``coerce``, ``convolve``) and operates on raw
values, which keeps the polynomial and tower code generic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import kernels
from .errors import BadDenominator, NotInvertible, OutOfRange, ZeroDivisorWitness

ExactInt = int
ExactRat = Fraction

# Miller-Rabin with the first 13 primes as bases is exact below this bound.
MR_BOUND = 3317044064679887385961981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
TRIAL_LIMIT = 10**5


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (TRIAL_LIMIT + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(TRIAL_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def primes_up_to(bound: int) -> list[int]:
    if bound <= TRIAL_LIMIT:
        ps = _small_primes()
        return [p for p in ps if p <= bound]
    return [n for n in range(2, bound + 1) if is_prime(n)]


def is_prime(n: int) -> bool:
    """Deterministic primality test for ``0 <= n < MR_BOUND``."""
    if n < 0:
        raise ValueError("is_prime expects n >= 0")
    if n >= MR_BOUND:
        raise OutOfRange(f"{n} exceeds the deterministic Miller-Rabin bound")
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``.

    The polynomial is x^2 + c with c = 1, 2, 3, ... and start value y0 = 2;
    a failed cycle moves on to the next c, so runs are reproducible.
    """
    c = 1
    while True:
        y, r, q = 2, 1, 1
        g = 1
        m = 64
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1


def factor_int(n: int) -> list[tuple[int, int]]:
    """Factor ``n >= 1`` into ``[(prime, exponent), ...]`` with primes increasing."""
    if n < 1:
        raise ValueError("factor_int expects n >= 1")
    if n >= MR_BOUND:
        raise OutOfRange(f"{n} exceeds the factorization bound")
    counts: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _brent_rho(m)
        stack += [d, m // d]
    return sorted(counts.items())


def prime_support(n: int) -> list[int]:
    return [p for p, _ in factor_int(abs(n))]


def divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factor_int(abs(n)):
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def to_fraction(x) -> Fraction:
    """Parse ints, Fractions and strings such as ``"-7/3"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


@dataclass(frozen=True)
class Residue:
    """An integer class modulo ``modulus``; ``value`` is kept in ``[0, modulus)``."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _other(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError("residues with different moduli")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else Residue(self.value + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else Residue(self.value - o, self.modulus)

    def __rsub__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else Residue(o - self.value, self.modulus)

    def __mul__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else Residue(self.value * o, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __pow__(self, e: int):
        return mod_pow(self, e)

    def inverse(self) -> Residue:
        return Residue(Zmod(self.modulus).inv(self.value), self.modulus)

    def __int__(self):
        return self.value


def mod_pow(a: Residue, e: int) -> Residue:
    """Square-and-multiply exponentiation of a residue, ``e >= 0``."""
    if e < 0:
        raise ValueError("mod_pow expects e >= 0")
    m = a.modulus
    result, base = 1 % m, a.value
    while e:
        if e & 1:
            result = result * base % m
        base = base * base % m
        e >>= 1
    return Residue(result, m)


class Ring:
    """Protocol shared by base rings and tower levels (raw-value arithmetic)."""

    sub = None
    depth = 0
    is_field = False
    characteristic = 0
    cardinality = None
    zero = None
    one = None

    @property
    def base(self):
        r = self
        while r.sub is not None:
            r = r.sub
        return r

    def add(self, a, b):
        return a + b

    def minus(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a) -> bool:
        return a == self.zero

    def from_int(self, n: int):
        return self.coerce(n)

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def convolve(self, a, b) -> list:
        """Coefficient list of the product of two polynomials (no trimming)."""
        if not a or not b:
            return []
        out = [self.zero] * (len(a) + len(b) - 1)
        is_zero, add, mul = self.is_zero, self.add, self.mul
        for i, ai in enumerate(a):
            if is_zero(ai):
                continue
            for j, bj in enumerate(b):
                if is_zero(bj):
                    continue
                out[i + j] = add(out[i + j], mul(ai, bj))
        return out

    def fmt(self, a):
        return str(a)


class RationalField(Ring):
    is_field = True
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, str)):
            return to_fraction(x)
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in QQ")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def convolve(self, a, b):
        if not a or not b:
            return []
        da = math.lcm(*(x.denominator for x in a))
        db = math.lcm(*(x.denominator for x in b))
        ia = [x.numerator * (da // x.denominator) for x in a]
        ib = [x.numerator * (db // x.denominator) for x in b]
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(ia):
            if x:
                for j, y in enumerate(ib):
                    if y:
                        out[i + j] += x * y
        d = da * db
        return [Fraction(c, d) for c in out]

    def fmt(self, a):
        return str(a)

    def __repr__(self):
        return "QQ"

    def tag(self):
        return "QQ"


class IntegerRing(Ring):
    """Z with exact division; used by the subresultant resultant."""

    zero = 0
    one = 1

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def inv(self, a):
        if a in (1, -1):
            return a
        raise NotInvertible(f"{a} is not a unit of ZZ")

    def exact_div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{b} does not divide {a}")
        return q

    def __repr__(self):
        return "ZZ"

    def tag(self):
        return "ZZ"


class ResidueRing(Ring):
    """Z/m on raw ints in ``[0, m)``."""

    def __init__(self, modulus: int):
        if modulus < 2:
            raise ValueError("modulus must be >= 2")
        self.modulus = modulus
        self.characteristic = modulus
        self.cardinality = modulus
        self.zero = 0
        self.one = 1

    def coerce(self, x):
        if isinstance(x, Residue):
            if x.modulus != self.modulus:
                raise ValueError("residue modulus mismatch")
            return x.value
        if isinstance(x, Fraction):
            if math.gcd(x.denominator, self.modulus) != 1:
                raise BadDenominator(f"denominator of {x} is not prime to {self.modulus}")
            return x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus
        if isinstance(x, str):
            return self.coerce(to_fraction(x))
        return int(x) % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def minus(self, a, b):
        return (a - b) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def is_zero(self, a):
        return a == 0

    def inv(self, a):
        a %= self.modulus
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 mod {self.modulus}")
        if math.gcd(a, self.modulus) != 1:
            raise ZeroDivisorWitness(self, a)
        return pow(a, -1, self.modulus)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.modulus)
        return pow(a, e, self.modulus)

    def convolve(self, a, b):
        return kernels.poly_mul_mod(list(a), list(b), self.modulus)

    def residue(self, a) -> Residue:
        return Residue(a, self.modulus)

    def __repr__(self):
        return f"Zmod({self.modulus})"

    def tag(self):
        return f"Z/{self.modulus}"

    def __eq__(self, other):
        return type(other) is type(self) and other.modulus == self.modulus

    def __hash__(self):
        return hash((type(self).__name__, self.modulus))


class PrimeField(ResidueRing):
    is_field = True

    def __init__(self, p: int):
        if p < 2 or not is_prime(p):
            raise ValueError(f"{p} is not prime")
        super().__init__(p)
        self.p = p

    def inv(self, a):
        a %= self.modulus
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in GF({self.p})")
        return pow(a, -1, self.modulus)

    def __repr__(self):
        return f"GF({self.p})"

    def tag(self):
        return f"F_{self.p}"


class ZpkRing(ResidueRing):
    """Z/p^k, the finite-precision stand-in for the p-adic integers."""

    def __init__(self, p: int, k: int):
        if k < 1:
            raise ValueError("precision k must be >= 1")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        super().__init__(p**k)
        self.p = p
        self.k = k

    def inv(self, a):
        a %= self.modulus
        if a % self.p == 0:
            raise NotInvertible(f"{a} is divisible by {self.p} in Z/{self.p}^{self.k}")
        return pow(a, -1, self.modulus)

    def __repr__(self):
        return f"Zpk({self.p}, {self.k})"

    def tag(self):
        return f"Z/{self.p}^{self.k}"

    def __eq__(self, other):
        return type(other) is type(self) and (other.p, other.k) == (self.p, self.k)

    def __hash__(self):
        return hash(("Zpk", self.p, self.k))


QQ = RationalField()
ZZ = IntegerRing()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def Zmod(m: int) -> ResidueRing:
    return ResidueRing(m)


@lru_cache(maxsize=None)
def Zpk(p: int, k: int) -> ZpkRing:
    return ZpkRing(p, k)
