import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legendre_tower.arith import GF, QQ
from legendre_tower.ecring import CurveModel, on_curve
from legendre_tower.errors import BadLambda, BadN, SingularCurve
from legendre_tower.legendre import (
    all_points,
    build_site,
    radical_quotient_is_power,
    solvable_points,
    specialize_generic_point,
    ulmer_consistency,
    ulmer_point,
)
from legendre_tower.poly import Poly
from legendre_tower.tower import FunctionField


def test_worked_example_site():
    site = build_site(QQ, 86, 10)
    assert site.tower.rank == 20
    assert site.residual().is_zero()
    assert site.identities_hold()
    u, v = site.u, site.v
    assert site.point.x == u and site.point.y == u * (u + 1) * v


def test_small_site():
    site = build_site(QQ, 3, 4)
    assert site.tower.rank == 8 and site.residual().is_zero()


def test_site_over_finite_field():
    site = build_site(GF(7), 3, 4)
    assert site.residual().is_zero()


def test_bad_inputs():
    with pytest.raises(BadLambda):
        build_site(QQ, 1, 6)
    with pytest.raises(BadLambda):
        build_site(QQ, 0, 6)
    for n in (2, 5, 7):
        with pytest.raises(BadN):
            build_site(QQ, 3, n)
    with pytest.raises(BadN):
        build_site(GF(5), 3, 10)


@given(st.integers(-50, 50).filter(lambda x: x not in (0, 1)), st.sampled_from([4, 6, 8]))
@settings(max_examples=20, deadline=None)
def test_point_on_curve_random_lambda(lam, n):
    assert build_site(QQ, lam, n).residual().is_zero()


def test_rational_lambda():
    site = build_site(QQ, Fraction(-7, 3), 6)
    assert site.residual().is_zero()


def test_identity_as_polynomials():
    # u + lam = u(u+1) q(u) after substituting lam = u^n: checked as integer polynomials
    for n in range(4, 17, 2):
        q = Poly(QQ, [(-1) ** i for i in range(n - 1)])
        u = Poly.x(QQ)
        assert u * (u + 1) * q == u + u**n


@pytest.mark.parametrize("p,f,e", [(3, 1, 2), (5, 1, 3), (3, 2, 5)])
def test_ulmer_point(p, f, e):
    up = ulmer_point(p, f)
    assert up.n == p**f + 1
    F = up.curve.ring
    assert isinstance(F, FunctionField)
    u = up.point.x
    assert up.point.y == u * (u + 1) ** e
    assert up.residual().is_zero()


def test_ulmer_consistency():
    assert ulmer_consistency(3, 1) and ulmer_consistency(7, 1)
    assert not radical_quotient_is_power(QQ, 4)


@pytest.mark.parametrize("p,f", [(3, 1), (5, 1), (3, 2)])
def test_specialization(p, f):
    assert specialize_generic_point(p, f).matches


def test_all_points_over_q():
    (br,) = all_points(QQ, 3, 4)
    assert len(br.points) == 4
    assert br.residuals_zero and br.distinct


def test_all_points_over_f7():
    brs = all_points(GF(7), 3, 4)
    assert all(br.residuals_zero and br.distinct and len(br.points) == 4 for br in brs)


def test_all_points_reducible_zeta_step():
    # X^2 + 1 is reducible over F_13, but the x-differences (zeta^i - zeta^j) u
    # are units whenever p does not divide n, so no split is forced
    brs = all_points(GF(13), 2, 4)
    assert len(brs) == 1
    for br in brs:
        assert br.residuals_zero and br.distinct
        assert len(br.points) == 4


def test_solvable_cubic_with_irrational_roots():
    res = solvable_points(CurveModel.general(0, 0, -2, QQ), 4)
    pts = res.points
    assert len(pts) >= 8
    (br,) = res.branches
    assert br.residuals_zero and br.distinct
    assert [name for name, _ in br.tower.steps][:3] == ["r1", "r2", "s"]


def test_solvable_split_cubic():
    res = solvable_points(CurveModel.general(6, 5, 0, QQ), 4)  # x(x+1)(x+5)
    (br,) = res.branches
    assert "r1" not in br.tower.names
    assert br.lam == br.tower(5)
    assert len(br.points) == 8 and br.residuals_zero


def test_solvable_rejects_singular():
    with pytest.raises(SingularCurve):
        solvable_points(CurveModel.general(2, 1, 0, QQ), 4)  # x(x+1)^2


def test_solvable_random_curves():
    rng = random.Random(7)
    done = 0
    while done < 3:
        a2, a4, a6 = (rng.randint(-5, 5) for _ in range(3))
        m = CurveModel.general(a2, a4, a6, QQ)
        try:
            res = solvable_points(m, 4)
        except SingularCurve:
            continue
        for br in res.branches:
            assert br.error is None
            assert all(on_curve(br.curve, P).is_zero() for P in br.points)
        assert len(res.points) >= 8
        done += 1
