"""Towers of finite-rank algebras over a base ring.

A tower is a base ring followed by steps ``(name, monic polynomial over the
previous level)``.  Each level is itself a ring (a :class:`Level`) whose raw
elements are nested tuples: a level-``i`` element is the tuple of its
coefficients in the level-``i`` generator, each a level-``i-1`` raw element,
trailing zeros removed.  Elements embedded from lower levels therefore stay
cheap (a chain of 1-tuples), which matters for the wide towers built when
every n-th root of lambda gets its own square-root step.

Towers are not assumed to be fields.  Inversion runs the extended Euclidean
algorithm against the defining polynomial and raises
:class:`ZeroDivisorWitness` with a monic factor of it when the element is a
zero divisor; :func:`split_on_witness` and :func:`run_stages` then carry the
computation into both factors (dynamic evaluation).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .arith import QQ, GF, PrimeField, Ring, ResidueRing, to_fraction
from .errors import (
    BadAssignment,
    BadDenominator,
    DuplicateGenerator,
    InvalidWitness,
    SplitBudgetExceeded,
    ZeroDivisorWitness,
)
from .poly import Poly, divrem, gcd, gcd_ext


class FunctionField(Ring):
    """F_p(t): reduced fractions of polynomials over F_p, denominator monic."""

    is_field = True

    def __init__(self, p: int, var: str = "t"):
        self.k = GF(p)
        self.p = p
        self.var = var
        self.characteristic = p
        self.zero = ((), (1,))
        self.one = ((1,), (1,))

    def _norm(self, num: Poly, den: Poly):
        if num.is_zero():
            return self.zero
        g = gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        c = self.k.inv(den.lc)
        return (num.scale(c).coeffs, den.scale(c).coeffs)

    def _polys(self, a):
        return Poly(self.k, a[0], raw=True), Poly(self.k, a[1], raw=True)

    def coerce(self, x):
        if isinstance(x, Poly):
            return self._norm(x, Poly(self.k, [1]))
        if isinstance(x, tuple) and len(x) == 2:
            return x
        c = self.k.coerce(x)
        return ((c,), (1,)) if c else self.zero

    def gen(self):
        return ((0, 1), (1,))

    def add(self, a, b):
        an, ad = self._polys(a)
        bn, bd = self._polys(b)
        if ad == bd:
            return self._norm(an + bn, ad)
        return self._norm(an * bd + bn * ad, ad * bd)

    def neg(self, a):
        return (tuple(self.k.neg(c) for c in a[0]), a[1])

    def minus(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a[0] or not b[0]:
            return self.zero
        an, ad = self._polys(a)
        bn, bd = self._polys(b)
        return self._norm(an * bn, ad * bd)

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError("inverse of 0 in F_p(t)")
        an, ad = self._polys(a)
        return self._norm(ad, an)

    def is_zero(self, a):
        return not a[0]

    def fmt(self, a):
        num = str(Poly(self.k, a[0], raw=True)).replace("X", self.var)
        if a[1] == (1,):
            return num
        den = str(Poly(self.k, a[1], raw=True)).replace("X", self.var)
        return f"({num})/({den})"

    def numerator(self, a) -> Poly:
        return Poly(self.k, a[0], raw=True)

    def __repr__(self):
        return f"FunctionField({self.p}, {self.var!r})"

    def tag(self):
        return f"F_{self.p}({self.var})"

    def __eq__(self, other):
        return isinstance(other, FunctionField) and (other.p, other.var) == (self.p, self.var)

    def __hash__(self):
        return hash(("FunctionField", self.p, self.var))


class Level(Ring):
    """``sub[X] / (modulus)`` for a monic ``modulus`` over the ring ``sub``."""

    def __init__(self, sub: Ring, modulus: Poly, name: str):
        self.sub = sub
        self.modulus = modulus
        self.name = name
        self.degree = modulus.degree
        self.depth = sub.depth + 1
        self.rank = getattr(sub, "rank", 1) * self.degree
        self.characteristic = sub.characteristic
        self.is_field = False
        card = sub.cardinality
        self.cardinality = None if card is None else card**self.degree
        self.zero = ()
        self.one = self._wrap(sub.one)
        self._tail = [(j, c) for j, c in enumerate(modulus.coeffs[:-1]) if not sub.is_zero(c)]

    def _wrap(self, x):
        return () if self.sub.is_zero(x) else (x,)

    def _trim(self, c):
        z = self.sub.is_zero
        n = len(c)
        while n and z(c[n - 1]):
            n -= 1
        return tuple(c[:n])

    def reduce(self, c):
        d, sub = self.degree, self.sub
        if len(c) > d:
            c = list(c)
            for k in range(len(c) - 1, d - 1, -1):
                ck = c[k]
                if sub.is_zero(ck):
                    continue
                for j, mj in self._tail:
                    c[k - d + j] = sub.minus(c[k - d + j], sub.mul(ck, mj))
            del c[d:]
        return self._trim(c)

    def coerce(self, x):
        if isinstance(x, AlgElement):
            return x.lift_to(self).raw
        if isinstance(x, tuple):
            return x
        return self._wrap(self.sub.coerce(x))

    def add(self, a, b):
        if not a:
            return b
        if not b:
            return a
        if len(a) < len(b):
            a, b = b, a
        s = self.sub
        out = list(a)
        for i, c in enumerate(b):
            out[i] = s.add(out[i], c)
        return self._trim(out)

    def neg(self, a):
        s = self.sub
        return tuple(s.neg(c) for c in a)

    def minus(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        return self.reduce(self.sub.convolve(a, b))

    def is_zero(self, a):
        return not a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError(f"inverse of 0 at level {self.name}")
        if len(a) == 1:
            return self._wrap(self.sub.inv(a[0]))
        g, s, _ = gcd_ext(Poly(self.sub, a, raw=True), self.modulus)
        if g.degree > 0:
            raise ZeroDivisorWitness(self, g)
        return self.reduce(s.coeffs)

    def gen_raw(self):
        return self.reduce([self.sub.zero, self.sub.one])

    def flatten(self, a) -> list:
        sub = self.sub
        padded = list(a) + [sub.zero] * (self.degree - len(a))
        if isinstance(sub, Level):
            out = []
            for c in padded:
                out.extend(sub.flatten(c))
            return out
        return padded

    def unflatten(self, vec):
        sub = self.sub
        size = getattr(sub, "rank", 1)
        if len(vec) != self.rank:
            raise ValueError(f"expected {self.rank} coefficients, got {len(vec)}")
        chunks = [vec[i * size : (i + 1) * size] for i in range(self.degree)]
        if isinstance(sub, Level):
            return self._trim([sub.unflatten(ch) for ch in chunks])
        return self._trim([sub.coerce(ch[0]) for ch in chunks])

    def fmt(self, a):
        return str([self.base.fmt(c) for c in self.flatten(a)])

    def __repr__(self):
        return f"Level({self.name}, depth={self.depth}, rank={self.rank})"


def _chain(ring: Ring) -> list[Ring]:
    out = [ring]
    while out[-1].sub is not None:
        out.append(out[-1].sub)
    return out


class AlgElement:
    """An element of a ring in a tower (or of a base ring), with operators."""

    __slots__ = ("ring", "raw")

    def __init__(self, ring: Ring, raw):
        self.ring = ring
        self.raw = raw

    @classmethod
    def of(cls, ring: Ring, x) -> AlgElement:
        if isinstance(x, AlgElement):
            return x.lift_to(ring)
        return cls(ring, ring.coerce(x))

    def lift_to(self, ring: Ring) -> AlgElement:
        if self.ring is ring:
            return self
        steps = ring.depth - self.ring.depth
        target = ring
        for _ in range(steps):
            target = target.sub
        if steps < 0 or target is not self.ring:
            raise TypeError(f"cannot embed {self.ring!r} into {ring!r}")
        raw = self.raw
        cur = self.ring
        for lvl in reversed(_chain(ring)[:steps]):
            raw = () if cur.is_zero(raw) else (raw,)
            cur = lvl
        return AlgElement(ring, raw)

    def _pair(self, other):
        if isinstance(other, AlgElement):
            if other.ring is self.ring:
                return self, other
            if other.ring.depth > self.ring.depth:
                return self.lift_to(other.ring), other
            return self, other.lift_to(self.ring)
        if isinstance(other, (int, Fraction, str)):
            return self, AlgElement(self.ring, self.ring.coerce(other))
        return None

    def __add__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return AlgElement(a.ring, a.ring.add(a.raw, b.raw))

    __radd__ = __add__

    def __sub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return AlgElement(a.ring, a.ring.minus(a.raw, b.raw))

    def __rsub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return AlgElement(a.ring, a.ring.minus(b.raw, a.raw))

    def __mul__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return AlgElement(a.ring, a.ring.mul(a.raw, b.raw))

    __rmul__ = __mul__

    def __neg__(self):
        return AlgElement(self.ring, self.ring.neg(self.raw))

    def inverse(self) -> AlgElement:
        return AlgElement(self.ring, self.ring.inv(self.raw))

    def __truediv__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return a * b.inverse()

    def __rtruediv__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return b * a.inverse()

    def __pow__(self, e: int):
        return AlgElement(self.ring, self.ring.pow(self.raw, e))

    def __eq__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return a.raw == b.raw

    def __hash__(self):
        return hash((self.ring.depth, self.raw))

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.raw)

    def is_one(self) -> bool:
        return self.raw == self.ring.one

    def is_unit(self) -> bool:
        """True when invertible; zero divisors in a tower raise a witness."""
        if self.is_zero():
            return False
        try:
            self.inverse()
        except ZeroDivisorWitness:
            raise
        except (ArithmeticError, ZeroDivisionError):
            return False
        return True

    @property
    def coeffs(self) -> list:
        """Flat coefficient vector over the base ring in the monomial basis."""
        if isinstance(self.ring, Level):
            return self.ring.flatten(self.raw)
        return [self.raw]

    def to_json(self) -> list[str]:
        base = self.ring.base
        return [base.fmt(c) for c in self.coeffs]

    def __repr__(self):
        return f"AlgElement({self.ring.fmt(self.raw)})"


class Tower:
    """A base ring plus an ordered list of named extension steps."""

    def __init__(self, base: Ring, _levels=None, _names=(), _origin=None):
        self.base = base
        self.levels: tuple[Ring, ...] = _levels or (base,)
        self.names: tuple[str, ...] = tuple(_names)
        self._origin = _origin

    @property
    def steps(self) -> list[tuple[str, Poly]]:
        return [(n, lvl.modulus) for n, lvl in zip(self.names, self.levels[1:])]

    @property
    def top(self) -> Ring:
        return self.levels[-1]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def rank(self) -> int:
        return getattr(self.top, "rank", 1)

    def extend(self, name: str, step, *, allow_linear: bool = False) -> Tower:
        """Adjoin a root ``name`` of the monic polynomial ``step`` over the top level."""
        if name in self.names:
            raise DuplicateGenerator(name)
        if not isinstance(step, Poly):
            step = Poly(self.top, [AlgElement.of(self.top, c).raw for c in step], raw=True)
        if step.ring is not self.top:
            raise TypeError("step polynomial must have coefficients at the top level")
        if not step.is_monic():
            raise ValueError("step polynomial must be monic")
        if step.degree < (1 if allow_linear else 2):
            raise ValueError("step polynomial must have degree >= 2")
        lvl = Level(self.top, step, name)
        return Tower(self.base, self.levels + (lvl,), self.names + (name,))

    def index(self, name: str) -> int:
        return self.names.index(name) + 1

    def gen(self, name: str) -> AlgElement:
        i = self.index(name)
        lvl = self.levels[i]
        return AlgElement(lvl, lvl.gen_raw()).lift_to(self.top)

    def gen_at(self, name: str) -> AlgElement:
        """The generator as an element of its own level."""
        lvl = self.levels[self.index(name)]
        return AlgElement(lvl, lvl.gen_raw())

    def __call__(self, x) -> AlgElement:
        return AlgElement.of(self.top, x)

    def element(self, coeffs) -> AlgElement:
        top = self.top
        if isinstance(top, Level):
            return AlgElement(top, top.unflatten(list(coeffs)))
        (c,) = coeffs
        return AlgElement(top, top.coerce(c))

    def level_of(self, ring: Ring) -> int:
        for i, lvl in enumerate(self.levels):
            if lvl is ring:
                return i
        raise ValueError(f"{ring!r} is not a level of this tower")

    def contains(self, ring: Ring) -> bool:
        return any(lvl is ring for lvl in self.levels)

    def poly(self, coeffs, level: int | None = None) -> Poly:
        ring = self.levels[self.depth if level is None else level]
        return Poly(ring, [AlgElement.of(ring, c).raw for c in coeffs], raw=True)

    def describe(self) -> str:
        """Canonical text form: base tag, then ``name=[coefficients]`` per step."""
        parts = [self.base.tag()]
        for name, step in self.steps:
            coeffs = [_fmt_nested(step.ring, c) for c in step.coeffs]
            parts.append(f"{name}=[{', '.join(coeffs)}]")
        return "; ".join(parts)

    def to_json(self) -> dict:
        return {
            "base": self.base.tag(),
            "rank": self.rank,
            "steps": [
                {"name": n, "degree": s.degree, "coeffs": [_fmt_nested(s.ring, c) for c in s.coeffs]}
                for n, s in self.steps
            ],
        }

    def project(self, x):
        """Carry values built on an ancestor tower into this split branch."""
        if isinstance(x, AlgElement):
            if self.contains(x.ring) or self._origin is None:
                return x
            parent, i, _ = self._origin
            x = parent.project(x)
            j = parent.level_of(x.ring)
            if j < i:
                return x
            return AlgElement(self.levels[j], self._project_raw(x.raw, j))
        if isinstance(x, Poly):
            if self.contains(x.ring) or self._origin is None:
                return x
            parent, i, _ = self._origin
            x = parent.project(x)
            j = parent.level_of(x.ring)
            if j < i:
                return x
            new = self.levels[j]
            return Poly(new, [self._project_raw(c, j) for c in x.coeffs], raw=True)
        if isinstance(x, list):
            return [self.project(v) for v in x]
        if isinstance(x, tuple) and not hasattr(x, "_fields"):
            return tuple(self.project(v) for v in x)
        if isinstance(x, dict):
            return {k: self.project(v) for k, v in x.items()}
        if hasattr(x, "map_elements"):
            return x.map_elements(self.project)
        return x

    def _project_raw(self, raw, j):
        _, i, _ = self._origin
        if j < i:
            return raw
        new = self.levels[j]
        if j == i:
            return new.reduce(list(raw))
        return new._trim([self._project_raw(c, j - 1) for c in raw])

    @property
    def origin(self):
        return self._origin

    def __repr__(self):
        return f"Tower({self.describe()})"


def _fmt_nested(ring: Ring, c) -> str:
    if isinstance(ring, Level):
        return "[" + ", ".join(ring.base.fmt(v) for v in ring.flatten(c)) + "]"
    return ring.fmt(c)


def base_tower(base: Ring) -> Tower:
    return Tower(base)


def extend(t: Tower, name: str, step) -> Tower:
    return t.extend(name, step)


def mul(a: AlgElement, b: AlgElement) -> AlgElement:
    return a * b


def invert(a: AlgElement) -> AlgElement:
    return a.inverse()


def split_on_witness(t: Tower, w) -> tuple[Tower, Tower]:
    """Replace the witnessed step by the factor and by its cofactor.

    ``w`` is a :class:`ZeroDivisorWitness` or a ``(step name, factor)`` pair.
    Later steps are carried over by reducing their coefficients into each
    branch.  Steps may become linear in a branch.
    """
    if isinstance(w, ZeroDivisorWitness):
        level, factor = w.level, w.factor
        if not isinstance(factor, Poly):
            raise InvalidWitness("zero divisor lives in the base ring; cannot split")
        try:
            i = t.level_of(level)
        except ValueError as exc:
            raise InvalidWitness("witness does not belong to this tower") from exc
    else:
        name, factor = w
        i = t.index(name)
        level = t.levels[i]
    if i == 0:
        raise InvalidWitness("cannot split the base ring")
    step = level.modulus
    if factor.ring is not level.sub:
        factor = Poly(level.sub, [AlgElement.of(level.sub, c).raw for c in factor.coeffs], raw=True)
    if not factor.is_monic() or factor.degree < 1 or factor.degree >= step.degree:
        raise InvalidWitness("witness must be a monic proper factor")
    q, r = divrem(step, factor)
    if not r.is_zero():
        raise InvalidWitness("witness does not divide the step polynomial")
    branches = []
    for piece in (factor, q):
        prefix = Tower(t.base, t.levels[:i], t.names[: i - 1])
        nt = prefix.extend(t.names[i - 1], piece, allow_linear=True)
        branch = Tower(t.base, nt.levels, nt.names, _origin=(t, i, piece))
        for j in range(i + 1, len(t.levels)):
            old = t.levels[j]
            new_step = Poly(
                branch.top, [branch._project_raw(c, j - 1) for c in old.modulus.coeffs], raw=True
            )
            lvl = Level(branch.top, new_step, old.name)
            branch = Tower(t.base, branch.levels + (lvl,), branch.names + (old.name,), _origin=(t, i, piece))
        branches.append(branch)
    return branches[0], branches[1]


@dataclass
class Branch:
    tower: Tower
    state: dict
    error: Exception | None = None
    splits: list = field(default_factory=list)


def run_stages(tower: Tower, state: dict, stages, *, budget: int = 64,
               catch: tuple = ()) -> list[Branch]:
    """Run ``stages`` in order, splitting the tower whenever a stage meets a
    zero divisor and replaying that stage in both branches.

    Each stage maps ``(tower, state) -> (tower, state)``.  Exceptions listed
    in ``catch`` end the affected branch and are recorded on it.
    """
    branches = [Branch(tower, dict(state))]
    used = 0
    for stage in stages:
        done = []
        queue = list(branches)
        while queue:
            br = queue.pop(0)
            if br.error is not None:
                done.append(br)
                continue
            try:
                nt, ns = stage(br.tower, br.state)
                done.append(Branch(nt, ns, None, br.splits))
            except ZeroDivisorWitness as w:
                used += 1
                if used > budget:
                    raise SplitBudgetExceeded(f"more than {budget} splits") from w
                a, b = split_on_witness(br.tower, w)
                desc = f"{w.level.name}: {w.factor}"
                queue[:0] = [
                    Branch(a, a.project(br.state), None, br.splits + [desc + " (factor)"]),
                    Branch(b, b.project(br.state), None, br.splits + [desc + " (cofactor)"]),
                ]
            except catch as exc:
                done.append(Branch(br.tower, br.state, exc, br.splits))
        branches = done
    return branches


def cyclotomic(ring: Ring, n: int) -> Poly:
    """Phi_n by exact division of X^n - 1 by Phi_d for the proper divisors d."""
    num = Poly(ring, [ring.neg(ring.one)] + [ring.zero] * (n - 1) + [ring.one], raw=True)
    for d in range(1, n):
        if n % d == 0:
            q, r = divrem(num, cyclotomic(ring, d))
            if not r.is_zero():
                raise ArithmeticError("cyclotomic division not exact")
            num = q
    return num


# -- finite fields ---------------------------------------------------------


def _finite_order(ring: Ring) -> int:
    if ring.cardinality is None or not isinstance(ring.base, PrimeField):
        raise TypeError(f"{ring!r} is not a finite field level")
    return ring.cardinality


def _elements(ring: Ring):
    """Nonzero elements in a fixed order (flat coefficient vectors counting up)."""
    p = ring.base.p
    rank = getattr(ring, "rank", 1)
    for idx in range(1, p**rank):
        vec = []
        for _ in range(rank):
            idx, r = divmod(idx, p)
            vec.append(r)
        if isinstance(ring, Level):
            yield AlgElement(ring, ring.unflatten(vec))
        else:
            yield AlgElement(ring, vec[0])


def sqrt_mod_q(a: AlgElement) -> AlgElement | None:
    """Square root in F_q (q = p^d, p odd) by Tonelli-Shanks, or None."""
    ring = a.ring
    q = _finite_order(ring)
    if q % 2 == 0:
        raise ValueError("characteristic 2 is not supported")
    if a.is_zero():
        return a
    one = AlgElement(ring, ring.one)
    if a ** ((q - 1) // 2) != one:
        return None
    s, t = 0, q - 1
    while t % 2 == 0:
        s += 1
        t //= 2
    minus_one = -one
    z = next(e for e in _elements(ring) if e ** ((q - 1) // 2) == minus_one)
    m, c, tt, r = s, z**t, a**t, a ** ((t + 1) // 2)
    while tt != one:
        i, probe = 0, tt
        while probe != one:
            probe = probe * probe
            i += 1
        b = c
        for _ in range(m - i - 1):
            b = b * b
        m, c = i, b * b
        tt, r = tt * c, r * b
    return r


def _as_fp_poly(f, p: int) -> Poly:
    k = GF(p)
    if isinstance(f, Poly):
        if f.ring is k:
            return f
        return Poly(k, [k.coerce(c) for c in f.coeffs], raw=True)
    return Poly(k, [k.coerce(c) for c in f])


def roots_mod_p(f, p: int, *, seed: int = 0) -> list[int]:
    """All roots of ``f`` in F_p, ascending.

    gcd with X^p - X isolates the split part, which is then broken apart by
    equal-degree splitting driven by a seeded generator.
    """
    k = GF(p)
    f = _as_fp_poly(f, p)
    if f.degree < 1:
        raise ValueError("roots_mod_p expects a polynomial of degree >= 1")
    f = f.monic()
    x = Poly.x(k)
    split = gcd(f, x.pow_mod(p, f) - x)
    roots: list[int] = []
    rng = random.Random(seed)

    def _split(g: Poly):
        if g.degree == 0:
            return
        if g.degree == 1:
            roots.append(k.neg(g.coeffs[0]))
            return
        if p == 2:
            for r in range(2):
                if g(r) == 0:
                    roots.append(r)
            return
        while True:
            a = rng.randrange(p)
            h = Poly(k, [a, 1], raw=True).pow_mod((p - 1) // 2, g) - 1
            d = gcd(g, h)
            if 0 < d.degree < g.degree:
                _split(d)
                _split(g // d)
                return

    if split.degree > 0 and split.coeffs[0] == 0:
        roots.append(0)
        split = split // x
    _split(split)
    return sorted(roots)


# -- reduction at a prime --------------------------------------------------


class ReductionMap:
    """Ring map from a tower over QQ to F_p or F_{p^2}, fixed by generator images."""

    def __init__(self, tower: Tower, p: int, assignments: dict):
        if tower.base is not QQ:
            raise TypeError("reduce_at_prime expects a tower over QQ")
        self.tower = tower
        self.p = p
        target = None
        for v in assignments.values():
            if isinstance(v, AlgElement):
                if target is not None and v.ring is not target:
                    raise BadAssignment("images live in different rings")
                target = v.ring
        if target is None:
            target = GF(p)
        if not isinstance(target.base, PrimeField) or target.base.p != p:
            raise BadAssignment(f"images must lie in an extension of F_{p}")
        if target.cardinality not in (p, p * p):
            raise BadAssignment("residue degree is limited to 1 or 2")
        self.target = target
        missing = [n for n in tower.names if n not in assignments]
        if missing:
            raise BadAssignment(f"no image for {missing}")
        self.images = [AlgElement.of(target, assignments[n]) for n in tower.names]
        for i, name in enumerate(tower.names, start=1):
            step = tower.levels[i].modulus
            val = self._eval_poly(step, i - 1, self.images[i - 1])
            if not val.is_zero():
                raise BadAssignment(f"step {name} does not vanish at its image mod {p}")

    def _base(self, c: Fraction) -> AlgElement:
        if c.denominator % self.p == 0:
            raise BadDenominator(f"{self.p} divides the denominator of {c}")
        return AlgElement.of(self.target, GF(self.p).coerce(c))

    def _eval_raw(self, raw, level: int) -> AlgElement:
        if level == 0:
            return self._base(raw)
        zero = AlgElement(self.target, self.target.zero)
        img = self.images[level - 1]
        acc = zero
        for c in reversed(raw):
            acc = acc * img + self._eval_raw(c, level - 1)
        return acc

    def _eval_poly(self, poly: Poly, level: int, at: AlgElement) -> AlgElement:
        acc = AlgElement(self.target, self.target.zero)
        for c in reversed(poly.coeffs):
            acc = acc * at + self._eval_raw(c, level)
        return acc

    def __call__(self, x) -> AlgElement:
        if not isinstance(x, AlgElement):
            x = self.tower(x)
        return self._eval_raw(x.raw, self.tower.level_of(x.ring))


def reduce_at_prime(tower: Tower, p: int, assignments: dict) -> ReductionMap:
    return ReductionMap(tower, p, assignments)


def finite_field(p: int, modulus=None, name: str = "w") -> Tower:
    """F_p, or F_{p^d} when an irreducible monic ``modulus`` is given."""
    t = Tower(GF(p))
    if modulus is None:
        return t
    return t.extend(name, modulus)


def substitute_top(x: AlgElement, tower: Tower, value: AlgElement) -> AlgElement:
    """Evaluate an element of ``tower``'s top level at ``top generator = value``.

    ``value`` must lie in the level directly below.  The caller is
    responsible for the relation of the top step vanishing at ``value``.
    """
    top = tower.top
    below = top.sub
    value = AlgElement.of(below, value)
    x = x.lift_to(top)
    acc = AlgElement(below, below.zero)
    for c in reversed(x.raw):
        acc = acc * value + AlgElement(below, c)
    return acc


def parse_base(spec: str | None) -> Ring:
    """``None``/``"QQ"`` for the rationals, an odd prime for F_p."""
    if spec is None or str(spec).upper() in ("QQ", "Q", "0"):
        return QQ
    return GF(int(spec))


__all__ = [
    "AlgElement",
    "Branch",
    "FunctionField",
    "Level",
    "ReductionMap",
    "Tower",
    "cyclotomic",
    "extend",
    "finite_field",
    "invert",
    "mul",
    "parse_base",
    "reduce_at_prime",
    "roots_mod_p",
    "run_stages",
    "split_on_witness",
    "sqrt_mod_q",
    "substitute_top",
]
