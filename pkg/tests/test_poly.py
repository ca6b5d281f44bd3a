from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legendre_tower.arith import GF, QQ, ZZ, Zmod
from legendre_tower.errors import NonUnitLeadingCoefficient, ZeroDivisorWitness
from legendre_tower.poly import (
    Poly,
    divrem,
    gcd,
    gcd_ext,
    pseudo_rem,
    radical_quotient,
    resultant,
    x_pow_minus,
)


def sylvester_det(f, g):
    """Resultant oracle: exact determinant of the Sylvester matrix."""
    a, b = list(reversed(f)), list(reversed(g))
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + [Fraction(c) for c in a] + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + [Fraction(c) for c in b] + [Fraction(0)] * (size - n - 1 - i))
    det = Fraction(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if rows[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        for r in range(c + 1, size):
            k = rows[r][c] / rows[c][c]
            rows[r] = [x - k * y for x, y in zip(rows[r], rows[c])]
    return det


def P(coeffs, ring=QQ):
    return Poly(ring, coeffs)


def test_divrem_examples():
    q, r = divrem(P([1] + [0] * 8 + [1]), P([1, 1]))
    assert q == P([1, -1, 1, -1, 1, -1, 1, -1, 1]) and r.is_zero()
    assert divrem(P([0, 0, 1]), P([0, 1])) == (P([0, 1]), P([]))
    assert divrem(P([5, 2, 0, 1]), P([1, 0, 1])) == (P([0, 1]), P([5, 1]))


def test_divrem_nonunit_lc():
    with pytest.raises(NonUnitLeadingCoefficient):
        divrem(P([1, 0, 1], ZZ), P([1, 2], ZZ))


def test_radical_quotient_is_displayed_g():
    assert radical_quotient(QQ, 10) == P([1, -1, 1, -1, 1, -1, 1, -1, 1])


def test_resultant_examples():
    assert resultant(P([-1, 0, 1]), P([-2, 1])) == 3
    h = P([3, 0, 2, 1])
    assert resultant(P([-5, 1]), h) == h(Fraction(5))


def test_resultant_worked_example():
    r = resultant(x_pow_minus(QQ, 10, 86), radical_quotient(QQ, 10))
    assert r == 3027381380137219
    assert r == sylvester_det([-86] + [0] * 9 + [1], [1, -1, 1, -1, 1, -1, 1, -1, 1])


small = st.lists(st.integers(-6, 6), min_size=2, max_size=6).filter(lambda c: c[-1] != 0)


@given(small, small)
@settings(max_examples=150, deadline=None)
def test_resultant_matches_sylvester(f, g):
    assert resultant(P(f), P(g)) == sylvester_det(f, g)
    assert resultant(P(f, ZZ), P(g, ZZ)) == sylvester_det(f, g)


@given(small, small, st.sampled_from([5, 7, 101]))
@settings(max_examples=100, deadline=None)
def test_resultant_mod_p_matches_reduction(f, g, p):
    if f[-1] % p == 0 or g[-1] % p == 0:
        return
    F = GF(p)
    expected = sylvester_det(f, g) % p
    assert resultant(P(f, F), P(g, F)) == expected


def test_gcd_ext_examples():
    a, b = P([-1, 0, 1]), P([-1, 1])
    g, s, t = gcd_ext(a, b)
    assert g == b and s * a + t * b == g
    f = x_pow_minus(QQ, 10, 86)
    assert gcd(f, f.derivative()) == P([1])


@given(small, small)
@settings(max_examples=150, deadline=None)
def test_gcd_ext_bezout(f, g):
    a, b = P(f), P(g)
    d, s, t = gcd_ext(a, b)
    assert s * a + t * b == d
    assert d.is_monic()
    assert (a % d).is_zero() and (b % d).is_zero()


def test_gcd_ext_zero_divisor_in_coefficients():
    R = Zmod(6)
    with pytest.raises(ZeroDivisorWitness):
        gcd_ext(Poly(R, [1, 0, 1]), Poly(R, [1, 2]))


def test_pseudo_rem_over_zz():
    a, b = P([1, 0, 1], ZZ), P([1, 2], ZZ)
    r = pseudo_rem(a, b)
    # lc(b)^(deg a - deg b + 1) a = q b + r with deg r < deg b
    assert r.degree < b.degree
    assert r == P([5], ZZ)


@given(small, small)
def test_ring_axioms(f, g):
    a, b = P(f), P(g)
    assert a * b == b * a
    assert (a + b) - b == a
    assert a * (a + b) == a * a + a * b
    q, r = divrem(a, b)
    assert q * b + r == a and r.degree < b.degree


def test_pow_mod_and_eval():
    F = GF(7)
    x = Poly.x(F)
    m = Poly(F, [1, 0, 1])
    assert x.pow_mod(49, m) == x.pow_mod(1, m)
    assert Poly(F, [1, 2, 3])(2) == (1 + 4 + 12) % 7
