"""Infinite-order certificates for the constructed point P = (u, u(u+1)v).

At a prime of the tower above an odd p where v reduces to 0, the identity
u + lam = u(u+1)v^2 forces u = -lam, so P reduces to the 2-torsion point
(-lam, 0).  Two such primes of different residue characteristic rule out
every finite order for P.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import GF, QQ, Residue, factor_int, is_prime, primes_up_to, to_fraction
from .ecring import CurveModel, Infinity, Point, add, count_points, double, two_torsion
from .errors import BadDenominator, BadLambda, ConditionsFailed, InsufficientPrimes
from .legendre import LegendreSite, build_site
from .poly import radical_quotient
from .tower import AlgElement, reduce_at_prime, roots_mod_p, run_stages

CERT_VERSION = 1


@dataclass(frozen=True)
class PrimeReport:
    p: int
    u_residue: Residue
    good_reduction: bool
    cond_v_in_p: bool
    cond_units: bool

    @property
    def qualifies(self) -> bool:
        return self.good_reduction and self.cond_v_in_p and self.cond_units and self.p % 2 == 1

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "u_residue": self.u_residue.value,
            "good_reduction": self.good_reduction,
            "cond_v_in_p": self.cond_v_in_p,
            "cond_units": self.cond_units,
            "qualifies": self.qualifies,
        }


def _lambda(lam) -> Fraction:
    lam = to_fraction(lam)
    if lam in (0, 1):
        raise BadLambda("lambda in {0, 1} gives a singular curve")
    return lam


def check_prime(lam, n: int, p: int) -> PrimeReport:
    """Conditions (good reduction, v in the prime, u and u+1 units) at the
    degree-one prime above ``p`` where u = -lam."""
    lam = _lambda(lam)
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if lam.denominator % p == 0:
        raise BadDenominator(f"{p} divides the denominator of lambda")
    k = GF(p)
    lam_p = k.coerce(lam)
    ubar = k.neg(lam_p)
    q = radical_quotient(k, n)
    cond_v = q(ubar) == 0
    cond_units = ubar != 0 and k.add(ubar, 1) != 0
    disc_num = (16 * lam * lam * (lam - 1) ** 2).numerator
    good = disc_num % p != 0
    return PrimeReport(p, Residue(ubar, p), good, cond_v, cond_units)


def _candidates(lam: Fraction, n: int, bound: int) -> list[int]:
    num = lam.numerator ** (n - 1) - lam.denominator ** (n - 1)
    return [p for p in primes_up_to(bound) if p > 2 and num % p == 0 and lam.denominator % p]


def search_primes(lam, n: int, bound: int, threads: int = 1) -> list[PrimeReport]:
    """Qualifying odd p <= bound; candidates are the divisors of numerator(lam^(n-1) - 1)."""
    lam = _lambda(lam)
    if bound < 3:
        raise ValueError("bound must be >= 3")
    cands = _candidates(lam, n, bound)
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            reports = list(ex.map(lambda p: check_prime(lam, n, p), cands))
    else:
        reports = [check_prime(lam, n, p) for p in cands]
    return [r for r in reports if r.qualifies]


def brute_force_qualifying(lam, n: int, bound: int) -> list[int]:
    """Every odd p <= bound admitting a root r of X^n - lam with q(r) = 0 and
    r not in {0, -1}, at good reduction; found by root finding, not by the
    forced congruence."""
    lam = _lambda(lam)
    out = []
    for p in primes_up_to(bound):
        if p == 2 or lam.denominator % p == 0:
            continue
        if (16 * lam * lam * (lam - 1) ** 2).numerator % p == 0:
            continue
        k = GF(p)
        f = [k.neg(k.coerce(lam))] + [0] * (n - 1) + [1]
        q = radical_quotient(k, n)
        for r in roots_mod_p(f, p):
            if r not in (0, p - 1) and q(r) == 0:
                out.append(p)
                break
    return out


@dataclass
class Certificate:
    lam: Fraction
    n: int
    p: int
    q: int
    reports: tuple[PrimeReport, PrimeReport]
    reduction_images: dict
    infinite_order: bool = True
    torsion: dict | None = None

    def to_json(self) -> dict:
        return {
            "version": CERT_VERSION,
            "lambda": str(self.lam),
            "n": self.n,
            "p": self.p,
            "q": self.q,
            "residues": {str(r.p): r.u_residue.value for r in self.reports},
            "conditions": {str(r.p): r.to_json() for r in self.reports},
            "reduction_images": self.reduction_images,
            "conclusion": "infinite order" if self.infinite_order else "undetermined",
            **({"torsion": self.torsion} if self.torsion else {}),
        }


def _reduction_image(site: LegendreSite, p: int) -> dict:
    lam_p = GF(p).coerce(site.lam.raw)
    red = reduce_at_prime(site.tower, p, {"u": -lam_p % p, "v": 0})
    x, y = red(site.point.x), red(site.point.y)
    curve = CurveModel.legendre(lam_p, GF(p))
    P = Point(x, y)
    doubled = double(curve, P)
    return {
        "x": x.raw,
        "y": y.raw,
        "equals_minus_lambda": x.raw == (-lam_p) % p and y.raw == 0,
        "doubles_to_infinity": doubled is Infinity,
    }


def certify(lam, n: int, p: int, q: int, site: LegendreSite | None = None) -> Certificate:
    """Issue a certificate when both primes qualify; otherwise raise."""
    lam = _lambda(lam)
    if p == q:
        raise ValueError("p and q must be distinct")
    if p % 2 == 0 or q % 2 == 0:
        raise ValueError("p and q must be odd")
    reports = (check_prime(lam, n, p), check_prime(lam, n, q))
    for r in reports:
        if not r.qualifies:
            raise ConditionsFailed(r)
    if site is None:
        site = build_site(QQ, lam, n)
    images = {str(r.p): _reduction_image(site, r.p) for r in reports}
    for r in reports:
        img = images[str(r.p)]
        if not (img["equals_minus_lambda"] and img["doubles_to_infinity"]):
            raise ConditionsFailed(r, f"reduction at {r.p} is not (-lambda, 0)")
    return Certificate(lam, n, p, q, reports, images)


def verify_certificate(doc: dict) -> list[str]:
    """Recompute the prime conditions recorded in a certificate document.

    Returns the list of discrepancies (empty when the certificate checks out).
    """
    problems = []
    lam = to_fraction(doc["lambda"])
    n, p, q = int(doc["n"]), int(doc["p"]), int(doc["q"])
    if p == q:
        problems.append("p equals q")
    for prime in (p, q):
        r = check_prime(lam, n, prime)
        stored = doc["conditions"].get(str(prime), {})
        fresh = r.to_json()
        for key, val in fresh.items():
            if stored.get(key) != val:
                problems.append(f"{prime}: {key} recorded {stored.get(key)!r}, recomputed {val!r}")
        if doc["residues"].get(str(prime)) != r.u_residue.value:
            problems.append(f"{prime}: residue mismatch")
        if not r.qualifies:
            problems.append(f"{prime}: does not qualify")
        lam_p = (-GF(prime).coerce(lam)) % prime
        img = doc.get("reduction_images", {}).get(str(prime), {})
        if img.get("x") != lam_p or img.get("y") != 0:
            problems.append(f"{prime}: reduction image is not (-lambda, 0)")
    if doc.get("conclusion") != "infinite order":
        problems.append("conclusion is not 'infinite order'")
    return problems


# -- torsion -----------------------------------------------------------------


def _closure(curve: CurveModel, gens: list, cap: int = 64) -> list:
    elems = [Infinity]
    frontier = [Infinity]
    while frontier:
        new = []
        for P in frontier:
            for G in gens:
                R = add(curve, P, G)
                if not any(_same(R, E) for E in elems):
                    elems.append(R)
                    new.append(R)
                    if len(elems) > cap:
                        raise RuntimeError("generated subgroup exceeds the cap")
        frontier = new
    return elems


def _same(P, Q) -> bool:
    if P is Infinity or Q is Infinity:
        return P is Q
    return P.x == Q.x and P.y == Q.y


@dataclass
class TorsionLower:
    order: int
    points: list
    four_torsion: Point | None
    doubling_ok: bool


def _as_site(lam, n) -> LegendreSite:
    if isinstance(lam, LegendreSite):
        return lam
    return build_site(QQ, _lambda(lam), n)


def torsion_lower(lam, n: int | None = None) -> TorsionLower:
    """Order of the subgroup generated by the verified 2-torsion and, since
    sqrt(lam) = u^(n/2) lies in the tower, T = (sqrt(lam), sqrt(lam)(1+sqrt(lam))).

    ``lam`` may also be a prebuilt :class:`LegendreSite`.
    """
    site = _as_site(lam, n)
    curve = site.curve
    tors = two_torsion(curve)
    for T in tors:
        if double(curve, T) is not Infinity:
            raise RuntimeError("2-torsion point does not double to infinity")
    gens = tors[:2]
    four = None
    ok = True
    if site.n % 2 == 0:
        r = site.u ** (site.n // 2)
        T = Point(r, r * (1 + r))
        if not (T.y * T.y - curve.rhs(T.x)).is_zero():
            raise RuntimeError("four-torsion candidate is not on the curve")
        D = double(curve, T)
        ok = D is not Infinity and D.x.is_zero() and D.y.is_zero()
        if ok:
            four = T
            gens = [T, tors[1]]
    group = _closure(curve, gens)
    return TorsionLower(len(group), group, four, ok)


@dataclass
class Site:
    p: int
    u_residue: int
    v_residue: int
    count: int


def degree_one_sites(lam, n: int, count: int, *, min_p: int = 5, limit: int = 10**5) -> list[Site]:
    """Degree-one primes of base(u, v) above good-reduction primes p >= min_p."""
    lam = _lambda(lam)
    q_int = radical_quotient(QQ, n)
    sites = []
    for p in primes_up_to(limit):
        if p < max(min_p, 5):
            continue
        if lam.denominator % p == 0 or lam.numerator % p == 0 or n % p == 0:
            continue
        if (16 * lam * lam * (lam - 1) ** 2).numerator % p == 0:
            continue
        k = GF(p)
        lp = k.coerce(lam)
        f = [k.neg(lp)] + [0] * (n - 1) + [1]
        qk = radical_quotient(k, n)
        for r in roots_mod_p(f, p):
            g = qk(r)
            s = 0 if g == 0 else _sqrt_fp(g, p)
            if s is None:
                continue
            curve = CurveModel.legendre(lp, k)
            sites.append(Site(p, r, s, count_points(curve)))
            break
        if len(sites) >= count:
            break
    return sites


def _sqrt_fp(a: int, p: int) -> int | None:
    from .tower import sqrt_mod_q

    r = sqrt_mod_q(AlgElement(GF(p), a % p))
    return None if r is None else r.raw


@dataclass
class TorsionUpper:
    bound: int
    sites: list[Site]
    history: list[int] = field(default_factory=list)


def _combine(sites: list[Site]) -> int:
    """Multiple of the torsion order: the l-part is the smallest l-adic valuation
    among sites whose characteristic differs from l."""
    fact = {s.p: dict(factor_int(s.count)) for s in sites}
    ells = set().union(*(f.keys() for f in fact.values()))
    bound = 1
    for ell in sorted(ells):
        vals = [fact[s.p].get(ell, 0) for s in sites if s.p != ell]
        if vals:
            bound *= ell ** min(vals)
    return bound


def torsion_upper(lam, n: int, prime_count: int = 3) -> TorsionUpper:
    """Multiple of #E(L)_tors from point counts at degree-one reduction sites."""
    if prime_count < 2:
        raise InsufficientPrimes("need at least two sites")
    sites = degree_one_sites(lam, n, prime_count)
    if len({s.p for s in sites}) < 2:
        raise InsufficientPrimes("fewer than two residue characteristics available")
    history = [_combine(sites[: i + 1]) for i in range(len(sites))]
    return TorsionUpper(history[-1], sites, history)


def nontorsion_direct(lam, n: int | None = None, M: int | None = None, *, budget: int = 16) -> bool:
    """True iff kP is not the identity for 1 <= k <= M, computed exactly.

    M defaults to twice the torsion upper bound, which makes a True answer a
    proof of infinite order.  Zero-divisor splits are replayed; the answer
    must hold in every branch.
    """
    site = _as_site(lam, n)
    if M is None:
        lam_q = to_fraction(site.lam.raw) if site.base is QQ else None
        if lam_q is None:
            raise ValueError("give M explicitly over a base other than QQ")
        M = 2 * torsion_upper(lam_q, site.n).bound
    if M < 1:
        raise ValueError("M must be >= 1")

    def stage(t, st):
        curve, P = st["curve"], st["P"]
        Q = P
        for _ in range(2, M + 1):
            Q = add(curve, Q, P)
            if Q is Infinity:
                return t, dict(st, ok=False)
        return t, dict(st, ok=True)

    branches = run_stages(site.tower, {"curve": site.curve, "P": site.point}, [stage], budget=budget)
    return all(br.state["ok"] for br in branches)


def v_resultant(lam, n: int) -> Fraction:
    """Res(X^n - lam, q(X)); up to sign the norm of v^2 from base(u)."""
    from .poly import resultant, x_pow_minus

    lam = _lambda(lam)
    return to_fraction(resultant(x_pow_minus(QQ, n, lam), radical_quotient(QQ, n)))


def norm_support(lam, n: int) -> list[int]:
    """Primes dividing the numerator or denominator of the resultant above."""
    r = v_resultant(lam, n)
    if r == 0:
        raise ValueError("resultant vanishes: v is not a unit away from finitely many primes")
    return sorted({p for p, _ in factor_int(abs(r.numerator))} | {p for p, _ in factor_int(r.denominator)})


def certify_conjugates(lam, n: int, p: int, q: int) -> dict:
    """Certificate for P plus the n conjugate points over the radical tower.

    The i-th point is the image of P under the embedding u -> zeta^i u,
    v -> v_i, and embeddings preserve the order of a point, so one certificate
    for P covers all n of them.  The points are rebuilt here and checked to be
    on the curve and pairwise distinct.
    """
    from .legendre import all_points

    cert = certify(lam, n, p, q)
    branches = all_points(QQ, _lambda(lam), n)
    ok = all(br.residuals_zero and br.distinct and len(br.points) == n for br in branches)
    doc = cert.to_json()
    doc["conjugates"] = {"count": n, "verified": ok, "branches": len(branches)}
    if not ok:
        doc["conclusion"] = "undetermined"
    return doc
