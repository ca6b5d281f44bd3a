import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legendre_tower.arith import (
    GF,
    MR_BOUND,
    QQ,
    ZZ,
    Residue,
    Zmod,
    Zpk,
    divisors,
    factor_int,
    is_prime,
    mod_pow,
    prime_support,
    primes_up_to,
    to_fraction,
)
from legendre_tower.errors import NotInvertible, OutOfRange, ZeroDivisorWitness


def trial_is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def test_small_primality_matches_trial_division():
    for n in range(3000):
        assert is_prime(n) == trial_is_prime(n), n
    with pytest.raises(ValueError):
        is_prime(-3)


def test_known_primes():
    assert is_prime(1069)
    assert is_prime(10934266789)
    assert not is_prime(86)


def test_large_resultant_value_is_composite():
    # the value 3027381380137219 is a product of four primes, so not prime
    n = 3027381380137219
    assert not is_prime(n)
    assert 7 * 37 * 1069 * 10934266789 == n


def test_primality_bound():
    with pytest.raises(OutOfRange):
        is_prime(MR_BOUND + 1)


def test_strong_pseudoprimes_rejected():
    # strong pseudoprimes to several small bases
    for n in (2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383, 341550071728321):
        assert not is_prime(n)


def test_factor_int_examples():
    assert factor_int(1) == []
    assert factor_int(86) == [(2, 1), (43, 1)]
    assert factor_int(86**9 - 1) == [(5, 1), (7, 1), (17, 1), (37, 1), (1069, 1), (10934266789, 1)]
    assert prime_support(3027381380137219) == [7, 37, 1069, 10934266789]


@given(st.integers(min_value=1, max_value=10**12))
@settings(max_examples=200, deadline=None)
def test_factor_int_reconstructs(n):
    fs = factor_int(n)
    assert math.prod(p**e for p, e in fs) == n
    assert all(is_prime(p) for p, _ in fs)
    assert [p for p, _ in fs] == sorted(p for p, _ in fs)


def test_factor_semiprime_of_large_primes():
    p, q = 1000000007, 998244353
    assert factor_int(p * q) == [(q, 1), (p, 1)]


def test_divisors_and_primes():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_mod_pow_examples():
    assert mod_pow(Residue(12, 37), 9) == Residue(pow(12, 9, 37), 37)
    assert mod_pow(Residue(25, 37), 9) == Residue(36, 37)
    assert mod_pow(Residue(5, 11), 0) == Residue(1, 11)


@given(st.integers(0, 10**6), st.integers(0, 500), st.integers(2, 10**6))
def test_mod_pow_matches_builtin(a, e, m):
    assert mod_pow(Residue(a, m), e).value == pow(a, e, m)


def test_residue_inverse():
    assert Residue(3, 7).inverse() * Residue(3, 7) == Residue(1, 7)
    with pytest.raises(ArithmeticError):
        Residue(2, 4).inverse()


def test_ring_tags_and_inverses():
    assert QQ.tag() == "QQ" and GF(7).tag() == "F_7" and Zpk(3, 4).tag() == "Z/3^4"
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)
    assert GF(7).inv(3) == 5
    with pytest.raises(NotInvertible):
        Zpk(3, 4).inv(9)
    with pytest.raises(ZeroDivisorWitness):
        Zmod(6).inv(2)
    assert ZZ.coerce(5) == 5


def test_to_fraction():
    assert to_fraction("-7/3") == Fraction(-7, 3)
    assert to_fraction(4) == Fraction(4)
    with pytest.raises(TypeError):
        to_fraction(1.5)
