import pytest

from amlat.numth import (
    InvalidPrime,
    factorint,
    hilbert_symbol,
    hilbert_places,
    is_prime,
    legendre,
    prime_factors,
    rational_sqrt,
)
from fractions import Fraction


def test_is_prime_small():
    primes = [p for p in range(60) if is_prime(p)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]


def test_factorint():
    assert factorint(360) == {2: 3, 3: 2, 5: 1}
    assert factorint(-17) == {17: 1}
    assert factorint(1) == {}
    with pytest.raises(ValueError):
        factorint(0)


def test_prime_factors_sorted():
    assert prime_factors(2 * 3 * 17) == (2, 3, 17)


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-1)) is None


def test_legendre_values():
    assert legendre(-1, 3) == -1
    assert legendre(1, 7) == 1
    assert legendre(17, 3) == -1
    assert legendre(6, 3) == 0


def test_legendre_euler_criterion_agreement():
    # oracle: explicit square enumeration
    for p in (3, 5, 7, 11, 13):
        squares = {(x * x) % p for x in range(1, p)}
        for a in range(1, p):
            want = 1 if a in squares else -1
            assert legendre(a, p) == want


def test_legendre_invalid_prime():
    with pytest.raises(InvalidPrime):
        legendre(3, 2)
    with pytest.raises(InvalidPrime):
        legendre(3, 15)


def test_hilbert_known_values():
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, -3, 3) == -1
    assert hilbert_symbol(-1, -5, 5) == 1
    assert hilbert_symbol(-2, -5, 5) == -1
    # p coprime to both arguments gives +1
    assert hilbert_symbol(3, 5, 7) == 1
    assert hilbert_symbol(-1, -1, -1) == -1
    assert hilbert_symbol(-1, 2, -1) == 1


def test_hilbert_zero_rejected():
    with pytest.raises(ValueError):
        hilbert_symbol(0, 5, 3)


def test_hilbert_product_formula_small_grid():
    for a in range(-12, 13):
        for b in range(-12, 13):
            if a == 0 or b == 0:
                continue
            prod = 1
            for p in hilbert_places(a, b):
                prod *= hilbert_symbol(a, b, p)
            assert prod == 1, (a, b)


def test_hilbert_symmetry_and_multiplicativity():
    places = (-1, 2, 3, 5, 7)
    values = [x for x in range(-10, 11) if x != 0]
    for a in values:
        for b in values:
            for p in places:
                assert hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p)
    for a in values:
        for b in values:
            for c in (-3, 2):
                for p in places:
                    lhs = hilbert_symbol(a, b, p) * hilbert_symbol(a, c, p)
                    assert lhs == hilbert_symbol(a, b * c, p)


def test_minus_two_nonresidue_for_5_mod_8():
    # the branch the (-2,-p) construction relies on: p = 5 mod 8 makes -2
    # a non-residue, so (-2,-p) ramifies at p
    for p in (5, 13, 29, 37, 53, 61):
        assert legendre(-2, p) == -1
        assert hilbert_symbol(-2, -p, p) == -1


def test_hilbert_square_invariance():
    for a in (-7, -2, 3, 11):
        for b in (-5, -1, 6):
            for p in (-1, 2, 3, 5, 7, 11):
                assert hilbert_symbol(a * 9, b * 4, p) == hilbert_symbol(a, b, p)
