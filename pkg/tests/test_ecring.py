import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legendre_tower.arith import GF, QQ
from legendre_tower.ecring import (
    CurveModel,
    Infinity,
    Point,
    add,
    count_points,
    discriminant,
    double,
    hasse_ok,
    neg,
    on_curve,
    order_of,
    scalar_mul,
    two_torsion,
)
from legendre_tower.errors import SingularCurve
from legendre_tower.tower import AlgElement, Tower, finite_field

from .test_poly import sylvester_det


def brute_count(a2, a4, a6, p):
    return 1 + sum(1 for x in range(p) for y in range(p) if (y * y - (x**3 + a2 * x * x + a4 * x + a6)) % p == 0)


def affine_points(m, p):
    out = []
    for x in range(p):
        for y in range(p):
            P = m.point(x, y)
            if on_curve(m, P).is_zero():
                out.append(P)
    return out


def test_discriminant_examples():
    assert discriminant(CurveModel.legendre(1, QQ)).is_zero()
    assert discriminant(CurveModel.legendre(86, QQ)).raw == 16 * 86**2 * 85**2
    m = CurveModel.general(0, 0, -2, QQ)
    # 16 * disc(x^3 - 2); disc = -Res(f, f') for a monic cubic
    assert discriminant(m).raw == 16 * -sylvester_det([-2, 0, 0, 1], [0, 0, 3]) == -1728


def test_legendre_discriminant_matches_general():
    for lam in (-7, 3, 86):
        leg = CurveModel.legendre(lam, QQ)
        gen = CurveModel.general(lam + 1, lam, 0, QQ)
        assert discriminant(leg) == discriminant(gen)


def test_on_curve_examples():
    m = CurveModel.legendre(86, QQ)
    assert on_curve(m, m.point(0, 0)).is_zero()
    assert on_curve(m, m.point(1, 1)).raw == 1 - 2 * 87
    assert on_curve(m, Infinity).is_zero()


def test_add_examples():
    m = CurveModel.legendre(86, QQ)
    P = m.point(0, 0)
    assert add(m, P, Infinity) == P and add(m, Infinity, P) == P
    assert add(m, P, P) is Infinity
    assert add(m, P, m.point(-1, 0)) == m.point(-86, 0)
    assert scalar_mul(m, 2, m.point(-86, 0)) is Infinity
    assert scalar_mul(m, 1, P) == P


def test_four_torsion_point_doubles_to_origin():
    # lam = 9 = 3^2: T = (3, 3*4) has 2T = (0, 0)
    m = CurveModel.legendre(9, QQ)
    T = m.point(3, 12)
    assert on_curve(m, T).is_zero()
    assert double(m, T) == m.point(0, 0)
    assert order_of(m, T, 10) == 4


def test_four_torsion_in_a_quadratic_tower():
    t = Tower(QQ).extend("r", [-5, 0, 1])
    r = t.gen("r")
    m = CurveModel.legendre(t(5), t.top)
    T = Point(r, r * (1 + r))
    assert on_curve(m, T).is_zero()
    assert double(m, T) == m.point(0, 0)


def test_count_points_examples():
    assert count_points(CurveModel.legendre(2, GF(5))) == 8 == brute_count(3, 2, 0, 5)
    assert count_points(CurveModel.legendre(12, GF(37))) == brute_count(13, 12, 0, 37) == 32


def test_count_points_singular():
    with pytest.raises(SingularCurve):
        count_points(CurveModel.legendre(1, GF(7)))


def test_count_points_extension_field():
    t = finite_field(3, [1, 0, 1])
    m = CurveModel.legendre(t(2) + t.gen("w"), t.top)
    elems = [t.element([a, b]) for a in range(3) for b in range(3)]
    brute = 1 + sum(1 for x in elems for y in elems if on_curve(m, Point(x, y)).is_zero())
    assert count_points(m) == brute
    assert hasse_ok(brute, 9)


@given(st.sampled_from([5, 7, 11, 13, 17, 23]), st.integers(0, 10**4), st.integers(0, 10**4), st.integers(0, 10**4))
@settings(max_examples=80, deadline=None)
def test_count_points_general_brute(p, a2, a4, a6):
    m = CurveModel.general(a2, a4, a6, GF(p))
    if discriminant(m).is_zero():
        return
    n = count_points(m)
    assert n == brute_count(a2, a4, a6, p)
    assert hasse_ok(n, p)


@pytest.mark.parametrize("p", [7, 11, 13])
def test_group_law_exhaustive(p):
    rng = random.Random(p)
    lam = rng.choice([x for x in range(2, p)])
    m = CurveModel.legendre(lam, GF(p))
    pts = affine_points(m, p) + [Infinity]
    assert len(pts) == count_points(m)
    for P in pts:
        assert add(m, P, neg(m, P)) is Infinity
        assert scalar_mul(m, len(pts), P) is Infinity
    for _ in range(200):
        P, Q, R = (rng.choice(pts) for _ in range(3))
        S = add(m, P, Q)
        assert S is Infinity or on_curve(m, S).is_zero()
        assert S == add(m, Q, P)
        assert add(m, S, R) == add(m, P, add(m, Q, R))


def test_scalar_mul_negative():
    m = CurveModel.legendre(3, GF(11))
    P = affine_points(m, 11)[1]
    assert scalar_mul(m, -3, P) == neg(m, scalar_mul(m, 3, P))


def test_two_torsion():
    m = CurveModel.legendre(86, QQ)
    for T in two_torsion(m):
        assert on_curve(m, T).is_zero()
        assert double(m, T) is Infinity


def test_over_lifts_coefficients():
    t = Tower(QQ).extend("r", [-2, 0, 1])
    m = CurveModel.legendre(3, QQ).over(t.top)
    assert m.lam == AlgElement.of(t.top, 3)
