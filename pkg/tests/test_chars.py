"""Kronecker symbol and character-group behaviour, checked against brute force."""

from fractions import Fraction
from math import gcd

import pytest

from overcong import DirichletChar, char_group, kronecker, orthogonality_sum
from overcong.chars import all_real_characters, euler_phi, factorize, is_prime


def legendre_bruteforce(a, p):
    # Quadratic-residue oracle for odd prime p.
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1


def test_kronecker_literals():
    assert kronecker(-4, 11) == -1
    assert kronecker(2, 7) == 1
    assert kronecker(5, 5) == 0
    assert kronecker(1, 0) == 1
    assert kronecker(-1, 0) == 1
    assert kronecker(3, 0) == 0


def test_kronecker_matches_legendre_for_odd_primes():
    primes = [p for p in range(3, 200, 2) if is_prime(p)]
    for p in primes:
        for a in range(-60, 61):
            assert kronecker(a, p) == legendre_bruteforce(a, p)


def test_kronecker_even_denominator():
    # (a/2) vanishes for even a, follows a mod 8 otherwise.
    for a, want in ((1, 1), (3, -1), (5, -1), (7, 1), (9, 1), (2, 0), (6, 0)):
        assert kronecker(a, 2) == want


def test_kronecker_multiplicative_in_both_arguments():
    values = [-15, -7, -2, -1, 2, 3, 5, 9, 14]
    for a in values:
        for b in values:
            for n in range(1, 60):
                assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)
    for n1 in range(1, 40):
        for n2 in range(1, 40):
            for a in (-6, -1, 2, 5, 21):
                assert kronecker(a, n1 * n2) == kronecker(a, n1) * kronecker(a, n2)


def test_kronecker_periodicity():
    # Periods in the bottom argument: |a| for a = 0,1 mod 4, else 4|a|; for
    # a = 3 mod 4 the symbol is only a periodic function on odd arguments.
    for a in list(range(-30, 0)) + list(range(1, 31)):
        period = abs(a) if a % 4 in (0, 1) else 4 * abs(a)
        odd_only = a % 4 == 3
        for n in range(1, 500):
            if odd_only and n % 2 == 0:
                continue
            assert kronecker(a, n) == kronecker(a, n + period)


def test_char_group_sizes_and_principal_first():
    for a in range(1, 25):
        group = char_group(a)
        assert len(group) == euler_phi(a)
        assert group[0].is_principal


def test_char_group_mod4():
    group = char_group(4)
    assert len(group) == 2
    nontrivial = group[1]
    for n in range(8):
        assert nontrivial.value_int(n) == kronecker(-4, n)
    assert nontrivial.conductor == 4


def test_char_group_mod8_all_real():
    group = char_group(8)
    assert len(group) == 4
    assert all(ch.is_real for ch in group)
    assert sorted(ch.conductor for ch in group) == [1, 4, 8, 8]
    tables = {tuple(ch.value_int(n) for n in range(8)) for ch in group}
    assert tuple(kronecker(2, n) for n in range(8)) in tables
    assert tuple(kronecker(-2, n) for n in range(8)) in tables


def test_char_group_mod5_has_complex_characters():
    group = char_group(5)
    assert len(group) == 4
    assert not all_real_characters(5)
    orders = sorted(ch.order for ch in group)
    assert orders == [1, 2, 4, 4]
    complex_char = next(ch for ch in group if ch.order == 4)
    with pytest.raises(ValueError, match="not real"):
        complex_char.value_int(2)


def test_all_real_characters_exactly_for_divisors_of_24():
    for a in range(1, 30):
        assert all_real_characters(a) == (24 % a == 0)


def test_characters_are_completely_multiplicative():
    for a in range(1, 25):
        for ch in char_group(a):
            for x in range(a):
                for y in range(a):
                    tx, ty, txy = ch.angle(x), ch.angle(y), ch.angle(x * y)
                    if tx is None or ty is None:
                        assert txy is None
                    else:
                        assert txy == (tx + ty) % 1


def test_character_zero_exactly_off_units():
    for a in (4, 8, 12, 11):
        for ch in char_group(a):
            for n in range(a):
                assert (ch.angle(n) is None) == (gcd(n, a) != 1)


def test_conductor_induction_property():
    # Values factor through residues mod the conductor; no smaller divisor works.
    for a in (8, 9, 12, 15, 16, 24):
        for ch in char_group(a):
            f = ch.conductor
            assert a % f == 0
            units = [x for x in range(a) if gcd(x, a) == 1]
            for x in units:
                for y in units:
                    if x % f == y % f:
                        assert ch.angle(x) == ch.angle(y)
            smaller = [d for d in range(1, f) if f % d == 0 and a % d == 0]
            for d in smaller:
                assert any(ch.angle(x) != ch.angle(y)
                           for x in units for y in units if x % d == y % d)


def test_from_kronecker_rejects_wrong_period():
    with pytest.raises(ValueError):
        DirichletChar.from_kronecker(2, 4)  # (2/.) needs period 8


def test_orthogonality_literals():
    assert orthogonality_sum(8, 5, 13) == 1
    assert orthogonality_sum(8, 5, 7) == 0
    assert orthogonality_sum(11, 3, 25) == 1


def test_orthogonality_indicator_contract():
    for a in range(1, 25):
        for b in range(a):
            if gcd(b, a) != 1:
                continue
            for n in range(201):
                expected = 1 if (n - b) % a == 0 else 0
                got = orthogonality_sum(a, b, n)
                assert got == Fraction(expected)


def test_orthogonality_requires_coprime_offset():
    with pytest.raises(ValueError):
        orthogonality_sum(8, 6, 3)


def test_factorize_and_phi():
    assert factorize(340736) == {2: 8, 11: 3}
    assert factorize(562432) == {2: 8, 13: 3}
    assert euler_phi(88) == 40
