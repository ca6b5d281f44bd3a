"""Points on Legendre curves y^2 = x(x+1)(x+lam) over radical towers.

With u^n = lam (n even) and v^2 = q(u), q(X) = (X^(n-1) + 1)/(X + 1), the
point (u, u(u+1)v) lies on the curve because (u+1) q(u) = u^(n-1) + 1 and so
u(u+1) q(u) = u^n + u = u + lam.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import QQ, PrimeField, Ring, divisors, to_fraction
from .ecring import CurveModel, Point, discriminant, neg, on_curve
from .errors import BadLambda, BadN, DegenerateLambda, SingularCurve
from .poly import Poly, exact_quotient, radical_quotient, x_pow_minus
from .tower import (
    AlgElement,
    Branch,
    FunctionField,
    Tower,
    cyclotomic,
    roots_mod_p,
    run_stages,
    sqrt_mod_q,
    substitute_top,
)


def poly_at(f: Poly, x: AlgElement) -> AlgElement:
    """Evaluate a polynomial with coefficients in a lower level at ``x``."""
    acc = AlgElement(x.ring, x.ring.zero)
    for c in reversed(f.coeffs):
        acc = acc * x + AlgElement(f.ring, c)
    return acc


def check_n(ring: Ring, n: int) -> None:
    if n < 4 or n % 2:
        raise BadN(f"n must be an even integer >= 4, got {n}")
    p = ring.characteristic
    if p == 2:
        raise BadN("characteristic 2 is excluded")
    if p and n % p == 0:
        raise BadN(f"characteristic {p} divides n = {n}")


def check_lambda(lam: AlgElement) -> None:
    if lam.is_zero() or (lam - 1).is_zero():
        raise BadLambda("lambda in {0, 1} gives a singular curve")


@dataclass
class LegendreSite:
    base: Ring
    lam: AlgElement
    n: int
    tower: Tower
    curve: CurveModel
    point: Point
    q: Poly

    @property
    def u(self) -> AlgElement:
        return self.tower.gen("u")

    @property
    def v(self) -> AlgElement:
        return self.tower.gen("v")

    def residual(self) -> AlgElement:
        return on_curve(self.curve, self.point)

    def identities_hold(self) -> bool:
        """v^2 (u+1) = u^(n-1) + 1 and u + lam = u(u+1) v^2."""
        u, v = self.u, self.v
        first = (v * v * (u + 1) - u ** (self.n - 1) - 1).is_zero()
        second = (u + self.lam - u * (u + 1) * v * v).is_zero()
        return first and second


def _coerce_lambda(base: Ring, lam) -> AlgElement:
    if isinstance(lam, AlgElement):
        return lam.lift_to(base)
    if isinstance(lam, str) and not isinstance(base, FunctionField):
        lam = to_fraction(lam)
    return AlgElement.of(base, lam)


def build_site(base: Ring, lam, n: int) -> LegendreSite:
    """Tower base(u, v) with u^n = lam, v^2 = q(u), and P = (u, u(u+1)v)."""
    check_n(base, n)
    lam = _coerce_lambda(base, lam)
    check_lambda(lam)
    q = radical_quotient(base, n)
    t = Tower(base).extend("u", x_pow_minus(base, n, lam.raw))
    u = t.gen("u")
    t = t.extend("v", [-poly_at(q, u), 0, 1])
    u, v = t.gen("u"), t.gen("v")
    curve = CurveModel.legendre(lam, t.top)
    return LegendreSite(base, lam, n, t, curve, Point(u, u * (u + 1) * v), q)


# -- characteristic p ---------------------------------------------------------


@dataclass
class UlmerPoint:
    p: int
    f: int
    n: int
    curve: CurveModel
    point: Point

    def residual(self) -> AlgElement:
        return on_curve(self.curve, self.point)


def ulmer_point(p: int, f: int) -> UlmerPoint:
    """(u, u(u+1)^((p^f+1)/2)) on y^2 = x(x+1)(x+u^n) over F_p(u), n = p^f + 1."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    if f < 1:
        raise ValueError("f must be >= 1")
    field_ = FunctionField(p, "u")
    n = p**f + 1
    u = AlgElement(field_, field_.gen())
    curve = CurveModel.legendre(u**n, field_)
    y = u * (u + 1) ** ((p**f + 1) // 2)
    return UlmerPoint(p, f, n, curve, Point(u, y))


def radical_quotient_is_power(ring: Ring, n: int) -> bool:
    """Whether q(X) = (X + 1)^(n - 2) holds in ring[X]."""
    q = radical_quotient(ring, n)
    return q == Poly(ring, [ring.one, ring.one], raw=True) ** (n - 2)


def ulmer_consistency(p: int, f: int) -> bool:
    """q(u) = (u+1)^(p^f - 1) in F_p[u], so v = (u+1)^((p^f-1)/2) is a valid choice."""
    from .arith import GF

    return radical_quotient_is_power(GF(p), p**f + 1)


@dataclass
class Specialization:
    relation_ok: bool
    image: Point
    ulmer: Point

    @property
    def matches(self) -> bool:
        return self.relation_ok and self.image == self.ulmer


def specialize_generic_point(p: int, f: int) -> Specialization:
    """Send the generic point over F_p(t)(u, v), u^n = t, to the u-level via
    v -> (u+1)^((p^f-1)/2) and compare with Ulmer's point."""
    base = FunctionField(p, "t")
    n = p**f + 1
    site = build_site(base, AlgElement(base, base.gen()), n)
    u = site.tower.gen_at("u")
    w = (u + 1) ** ((p**f - 1) // 2)
    relation = substitute_top(site.v * site.v - poly_at(site.q, u), site.tower, w)
    x = substitute_top(site.point.x, site.tower, w)
    y = substitute_top(site.point.y, site.tower, w)
    ulmer = Point(u, u * (u + 1) ** ((p**f + 1) // 2))
    return Specialization(relation.is_zero(), Point(x, y), ulmer)


# -- all n roots ----------------------------------------------------------------


@dataclass
class PointSet:
    """One branch of a multi-point construction."""

    tower: Tower
    curve: CurveModel | None
    points: list
    lam: AlgElement | None = None
    residuals_zero: bool = False
    distinct: bool = False
    error: Exception | None = None
    splits: list = field(default_factory=list)


def _stage_extend(name, make_step):
    def stage(t: Tower, st: dict):
        return t.extend(name, make_step(t, st)), st

    return stage


def _root_steps(n: int, q: Poly):
    """Stages adjoining zeta, an n-th root u of lam, and v_i^2 = q(zeta^i u)."""

    def zeta_step(t, st):
        return cyclotomic(t.top, n)

    def u_step(t, st):
        lam = st["lam"].lift_to(t.top)
        return [-lam] + [0] * (n - 1) + [1]

    stages = [_stage_extend("zeta", zeta_step), _stage_extend("u", u_step)]
    for i in range(n):

        def v_step(t, st, i=i):
            x = t.gen("zeta") ** i * t.gen("u")
            return [-poly_at(q, x), 0, 1]

        stages.append(_stage_extend(f"v{i}", v_step))
    return stages


def _distinct(points) -> bool:
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            P, Q = points[i], points[j]
            if (P.x - Q.x).is_zero() and (P.y - Q.y).is_zero():
                return False
    return True


def all_points(base: Ring, lam, n: int, *, budget: int = 64) -> list[PointSet]:
    """The n points (zeta^i u, zeta^i u (zeta^i u + 1) v_i) over one radical tower."""
    check_n(base, n)
    lam = _coerce_lambda(base, lam)
    check_lambda(lam)
    q = radical_quotient(base, n)

    def points_stage(t: Tower, st: dict):
        zeta, u = t.gen("zeta"), t.gen("u")
        curve = CurveModel.legendre(st["lam"], t.top)
        pts = []
        for i in range(n):
            x = zeta**i * u
            pts.append(Point(x, x * (x + 1) * t.gen(f"v{i}")))
        for i in range(n):
            for j in range(i + 1, n):
                # distinct in every factor of the algebra: differences are units
                (pts[i].x - pts[j].x).inverse()
        return t, dict(st, curve=curve, points=pts)

    branches = run_stages(Tower(base), {"lam": lam}, _root_steps(n, q) + [points_stage], budget=budget)
    out = []
    for br in branches:
        pts = br.state["points"]
        curve = br.state["curve"]
        ok = all(on_curve(curve, P).is_zero() for P in pts)
        out.append(PointSet(br.tower, curve, pts, lam, ok, _distinct(pts), None, br.splits))
    return out


# -- arbitrary curves via the 2-torsion field -----------------------------------


def _rational_roots(ring: Ring, cubic: Poly) -> list:
    if isinstance(ring, PrimeField):
        return [ring.coerce(r) for r in roots_mod_p(cubic, ring.p)]
    if ring is not QQ:
        return []
    den = math.lcm(*(Fraction(c).denominator for c in cubic.coeffs))
    ints = [int(c * den) for c in cubic.coeffs]
    roots = []
    if ints[0] == 0:
        roots.append(Fraction(0))
    nz = next(i for i, c in enumerate(ints) if c)
    lead, const = ints[-1], ints[nz]
    cands = {Fraction(s * a, b) for a in divisors(const) for b in divisors(lead) for s in (1, -1)}
    for r in sorted(cands):
        if cubic(r) == 0:
            roots.append(r)
    return roots


def _base_sqrt(ring: Ring, x):
    """Square root of a base element when it exists in the base, else None."""
    if ring is QQ:
        fr = Fraction(x)
        if fr < 0:
            return None
        a, b = math.isqrt(fr.numerator), math.isqrt(fr.denominator)
        if a * a == fr.numerator and b * b == fr.denominator:
            return Fraction(a, b)
        return None
    if isinstance(ring, PrimeField):
        r = sqrt_mod_q(AlgElement(ring, x))
        return None if r is None else r.raw
    return None


@dataclass
class SolvableResult:
    branches: list[PointSet]

    @property
    def points(self) -> list:
        return [P for br in self.branches if br.error is None for P in br.points]


def solvable_points(curve: CurveModel, n: int, *, budget: int = 64) -> SolvableResult:
    """At least 2n points of a general cubic model over a solvable tower.

    Adjoin the 2-torsion, move to Legendre form x = e1 + d X, y = s Y with
    d = e1 - e2 and s^2 = d^3, take the n radical points there plus their
    negatives, and pull everything back to the original model.
    """
    base = curve.ring
    if base.sub is not None:
        raise TypeError("solvable_points expects a model over a base ring")
    p = base.characteristic
    if p in (2, 3):
        raise BadN("characteristic must not divide 6")
    check_n(base, n)
    if discriminant(curve).is_zero():
        raise SingularCurve("discriminant vanishes")
    a2, a4, a6 = curve.a2.raw, curve.a4.raw, curve.a6.raw
    cubic = Poly(base, [a6, a4, a2, base.one], raw=True)
    q = radical_quotient(base, n)

    def torsion_stage(t: Tower, st: dict):
        rat = sorted(_rational_roots(base, cubic), key=lambda e: _sort_key(base, e))
        roots = [AlgElement(base, e) for e in rat]
        rest = cubic
        for e in rat:
            rest = exact_quotient(rest, Poly(base, [base.neg(e), base.one], raw=True))
        if rest.degree == 3:
            t = t.extend("r1", rest)
            r1 = t.gen("r1")
            c2 = r1 + AlgElement(base, a2)
            t = t.extend("r2", [c2 * r1 + AlgElement(base, a4), c2, 1])
            r1, r2 = t.gen("r1"), t.gen("r2")
            roots = [r1, r2, -(r1 + r2) - AlgElement(base, a2)]
        elif rest.degree == 2:
            t = t.extend("r1", rest)
            r1 = t.gen("r1")
            roots = roots + [r1, -r1 - AlgElement(base, rest.coeffs[1])]
        return t, dict(st, roots=roots)

    def legendre_stage(t: Tower, st: dict):
        e1, e2, e3 = (r.lift_to(t.top) for r in st["roots"])
        d = e1 - e2
        lam = (e1 - e3) / d
        if lam.is_zero() or (lam - 1).is_zero():
            raise DegenerateLambda("Legendre parameter degenerates in this branch")
        return t, dict(st, e1=e1, d=d, lam=lam)

    def scale_stage(t: Tower, st: dict):
        d = st["d"]
        cube = d * d * d
        if d.ring is base:
            root = _base_sqrt(base, d.raw)
            if root is not None:
                return t, dict(st, s=d * AlgElement(base, root))
        t = t.extend("s", [-cube.lift_to(t.top), 0, 1])
        return t, dict(st, s=t.gen("s"))

    def points_stage(t: Tower, st: dict):
        zeta, u = t.gen("zeta"), t.gen("u")
        e1, d, s = (st[k].lift_to(t.top) for k in ("e1", "d", "s"))
        pts = []
        for i in range(n):
            X = zeta**i * u
            Y = X * (X + 1) * t.gen(f"v{i}")
            P = Point(e1 + d * X, s * Y)
            pts.append(P)
        pts = pts + [neg(curve, P) for P in pts]
        return t, dict(st, points=pts)

    stages = [torsion_stage, legendre_stage, scale_stage] + _root_steps(n, q) + [points_stage]
    branches = run_stages(Tower(base), {}, stages, budget=budget, catch=(DegenerateLambda,))
    out = []
    for br in branches:
        if br.error is not None:
            out.append(PointSet(br.tower, None, [], None, False, False, br.error, br.splits))
            continue
        model = curve.over(br.tower.top)
        pts = br.state["points"]
        ok = all(on_curve(model, P).is_zero() for P in pts)
        out.append(PointSet(br.tower, model, pts, br.state["lam"], ok, _distinct(pts), None, br.splits))
    return SolvableResult(out)


def _sort_key(ring: Ring, e):
    # order by a = -e, the constant in the factor (x + a)
    if ring is QQ:
        return -Fraction(e)
    return ring.neg(e)
