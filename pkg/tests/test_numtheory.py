import pytest
from hypothesis import given, strategies as st

from cyclicaut.numtheory import (
    DomainError,
    factorize,
    gcd_many,
    has_prime_1_mod_3,
    inverse_mod,
    involutory_units,
    is_prime,
    lcm_many,
    omega_units,
    units,
)


def test_gcd_many_values():
    assert gcd_many([24, 4, 19]) == 1
    assert gcd_many([12, 8]) == 4
    assert gcd_many([8, 1, 2, 5]) == 1
    assert gcd_many([6]) == 6
    assert gcd_many([0, 9, 6]) == 3


def test_gcd_many_rejects_empty_and_all_zero():
    with pytest.raises(DomainError, match="undefined gcd"):
        gcd_many([])
    with pytest.raises(DomainError, match="undefined gcd"):
        gcd_many([0, 0, 0])
    with pytest.raises(DomainError):
        gcd_many([4, -2])


def test_lcm_many_values():
    assert lcm_many([7, 7, 7]) == 7
    assert lcm_many([2, 4, 8]) == 8
    assert lcm_many([3, 4, 12]) == 12
    with pytest.raises(DomainError):
        lcm_many([])
    with pytest.raises(DomainError):
        lcm_many([0, 3])


def test_is_prime_small():
    primes = [2, 3, 5, 7, 11, 13, 97, 7919]
    composites = [0, 1, 4, 6, 9, 15, 91, 7917]
    assert all(is_prime(p) for p in primes)
    assert not any(is_prime(c) for c in composites)


def test_factorize_values():
    assert factorize(12) == [(2, 2), (3, 1)]
    assert factorize(7) == [(7, 1)]
    assert factorize(168) == [(2, 3), (3, 1), (7, 1)]
    with pytest.raises(DomainError):
        factorize(1)
    with pytest.raises(DomainError):
        factorize(0)


@given(st.integers(min_value=2, max_value=10_000))
def test_factorize_reconstructs(n):
    out = 1
    for p, e in factorize(n):
        assert is_prime(p)
        out *= p**e
    assert out == n
    ps = [p for p, _ in factorize(n)]
    assert ps == sorted(ps)


def test_involutory_units_values():
    assert involutory_units(15) == [4, 11, 14]
    assert involutory_units(7) == [6]
    assert involutory_units(3) == [2]
    assert involutory_units(8) == [3, 5, 7]


def test_involutory_units_sweep():
    for n in range(2, 300):
        got = involutory_units(n)
        want = [k for k in range(2, n) if (k * k) % n == 1]
        assert got == want


def test_omega_units_values():
    assert omega_units(7) == [2, 4]
    assert omega_units(13) == [3, 9]
    assert omega_units(9) == []
    assert omega_units(3) == [1]


def test_omega_units_sweep():
    for n in range(2, 300):
        got = omega_units(n)
        want = [k for k in range(1, n) if (1 + k + k * k) % n == 0]
        assert got == want
        if got:
            # solvability forces every prime factor to be 3 (at most once) or 1 mod 3
            assert n % 9 != 0
            assert all(p == 3 or p % 3 == 1 for p, _ in factorize(n))


def test_has_prime_1_mod_3():
    assert has_prime_1_mod_3(13)
    assert not has_prime_1_mod_3(15)
    assert has_prime_1_mod_3(14)
    assert not has_prime_1_mod_3(8)


def test_units_and_inverse():
    assert units(8) == [1, 3, 5, 7]
    assert units(7) == [1, 2, 3, 4, 5, 6]
    for n in (5, 12, 30):
        for k in units(n):
            assert (k * inverse_mod(k, n)) % n == 1
    with pytest.raises(DomainError):
        inverse_mod(2, 8)


@given(st.integers(min_value=2, max_value=500), st.integers(min_value=1, max_value=499))
def test_inverse_mod_agrees_with_pow(n, k):
    from math import gcd

    if gcd(k, n) == 1:
        assert inverse_mod(k, n) == pow(k, -1, n)
