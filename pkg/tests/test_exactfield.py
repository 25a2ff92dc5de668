from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from schur_forge.errors import FactorizationTooLarge, InvalidField, InvalidPrime
from schur_forge.exactfield import (QQ, PrimeField, QuadField, factorize, format_rational,
                                    is_square_rational, legendre_symbol, parse_rational,
                                    quad_conjugate, quad_norm, square_class)

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10**4)
fields = st.sampled_from([QuadField(-1), QuadField(5), QuadField(2), QuadField(-3)])


@st.composite
def quad_pairs(draw):
    L = draw(fields)
    return L, L(draw(rationals), draw(rationals)), L(draw(rationals), draw(rationals))


def test_conjugate_examples():
    L = QuadField(-1)
    assert quad_conjugate(L(3)) == L(3)
    assert quad_conjugate(L.sqrt) == L(0, -1)
    K = QuadField(5)
    assert quad_conjugate(K(Fraction(1, 2), 3)) == K(Fraction(1, 2), -3)


def test_norm_examples():
    assert quad_norm(QuadField(-1)(1, 1)) == 2
    K = QuadField(5)
    assert quad_norm(K(2)) == 4
    x, y = K(3, 2), K(3, -2)
    assert quad_norm(x) == quad_norm(y) == -11
    assert x * y == K(-11)
    assert quad_norm(x * y) == 121


@given(quad_pairs())
def test_conjugation_is_automorphism(data):
    L, x, y = data
    assert quad_conjugate(x + y) == quad_conjugate(x) + quad_conjugate(y)
    assert quad_conjugate(x * y) == quad_conjugate(x) * quad_conjugate(y)
    assert quad_conjugate(quad_conjugate(x)) == x


@given(quad_pairs())
def test_norm_multiplicative(data):
    L, x, y = data
    assert quad_norm(x * y) == quad_norm(x) * quad_norm(y)
    assert (quad_norm(x) == 0) == (x == 0)
    if x:
        assert x * x.inverse() == L.one


@given(rationals)
def test_squares_are_squares(y):
    assert is_square_rational(y * y)


_SMALL_SQUARES = {Fraction(u, v) ** 2 for u in range(0, 61) for v in range(1, 61)}


@given(st.integers(-60, 60), st.integers(1, 60))
def test_nonsquares_have_no_small_root(p, q):
    x = Fraction(p, q)
    if not is_square_rational(x):
        assert x not in _SMALL_SQUARES
    else:
        # every square with numerator and denominator <= 60 has a root of that height
        assert x in _SMALL_SQUARES


def test_is_square_examples():
    assert is_square_rational(Fraction(9, 4))
    assert not is_square_rational(-1)
    assert is_square_rational(Fraction(50, 2))
    assert is_square_rational(0)


def _primes(upto):
    return [p for p in range(3, upto + 1) if all(p % q for q in range(2, p))]


@pytest.mark.parametrize("p", _primes(97))
def test_legendre_matches_brute_force(p):
    squares = {x * x % p for x in range(1, p)}
    for a in range(-p, 2 * p):
        want = 0 if a % p == 0 else (1 if a % p in squares else -1)
        assert legendre_symbol(a, p) == want


def test_legendre_examples_and_errors():
    assert legendre_symbol(2, 3) == -1
    assert legendre_symbol(4, 7) == 1
    assert legendre_symbol(3, 3) == 0
    for bad in (2, 9, 1, 0, -3):
        with pytest.raises(InvalidPrime):
            legendre_symbol(1, bad)


def test_quad_field_rejects_non_squarefree():
    for d in (0, 1, 4, -4, 12, 18):
        with pytest.raises(InvalidField):
            QuadField(d)


def test_square_class():
    assert square_class(Fraction(-50, 12)) == (-6, Fraction(5, 6))
    s, r = square_class(Fraction(18, 7))
    assert s * r * r == Fraction(18, 7) and s == 14


def test_factorize_bound():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(-7) == {7: 1}
    with pytest.raises(FactorizationTooLarge):
        factorize(1000003 * 1000033, bound=1000)
    assert factorize(1000003 * 1000033, bound=2 * 10**6) == {1000003: 1, 1000033: 1}


def test_parse_rational_is_exact():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational(5) == 5
    for bad in ("0.5", "1e3", True, 0.5, None, "", "1_000"):
        with pytest.raises((ValueError, TypeError)):
            parse_rational(bad)
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(-7) == "-7"


def test_prime_field_arithmetic():
    F = PrimeField(7)
    x = F(3)
    assert x * x.inverse() == F.one
    assert F(-1) == F(6)
    assert x ** 6 == F.one
    with pytest.raises(InvalidPrime):
        PrimeField(8)
    with pytest.raises(InvalidPrime):
        PrimeField(2**31 + 11)
    with pytest.raises(ZeroDivisionError):
        F(0).inverse()


def test_rational_field_descriptor():
    assert QQ(3) == Fraction(3)
    assert QQ.conj(Fraction(1, 2)) == Fraction(1, 2)
