"""Exact integer arithmetic primitives shared by every other module.

All arithmetic is over Python's arbitrary-precision integers; congruence
questions are answered by exhaustive residue scans, which is trivially
correct at the small moduli this package works with (n up to a few hundred).
"""

from __future__ import annotations

from math import gcd, isqrt, lcm
from typing import Iterable


class DomainError(ValueError):
    """An input lies outside the documented domain of an operation."""


Factorization = list[tuple[int, int]]


def gcd_many(values: Iterable[int]) -> int:
    """Greatest common divisor of a nonempty collection of nonnegative integers."""
    vals = list(values)
    if not vals:
        raise DomainError("undefined gcd: empty input")
    g = 0
    for v in vals:
        if v < 0:
            raise DomainError(f"undefined gcd: negative value {v}")
        g = gcd(g, v)
    if g == 0:
        raise DomainError("undefined gcd: all values zero")
    return g


def lcm_many(values: Iterable[int]) -> int:
    """Least common multiple of a nonempty collection of positive integers."""
    vals = list(values)
    if not vals:
        raise DomainError("lcm of empty input")
    acc = 1
    for v in vals:
        if v < 1:
            raise DomainError(f"lcm requires positive values, got {v}")
        acc = lcm(acc, v)
    return acc


def is_prime(p: int) -> bool:
    """Deterministic trial-division primality check."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for d in range(3, isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


def factorize(n: int) -> Factorization:
    """Prime factorization as (prime, exponent) pairs with strictly increasing primes."""
    if n < 2:
        raise DomainError(f"factorize requires n >= 2, got {n}")
    out: Factorization = []
    rest = n
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if rest > 1:
        out.append((rest, 1))
    return out


def involutory_units(n: int) -> list[int]:
    """All k in [2, n-1] with k^2 = 1 (mod n), ascending."""
    if n < 2:
        raise DomainError(f"modulus must be >= 2, got {n}")
    return [k for k in range(2, n) if (k * k) % n == 1]


def omega_units(n: int) -> list[int]:
    """All k in [1, n-1] with 1 + k + k^2 = 0 (mod n), ascending (may be empty)."""
    if n < 2:
        raise DomainError(f"modulus must be >= 2, got {n}")
    return [k for k in range(1, n) if (1 + k + k * k) % n == 0]


def has_prime_1_mod_3(n: int) -> bool:
    """True iff some prime divisor p of n satisfies p = 1 (mod 3)."""
    if n < 2:
        raise DomainError(f"requires n >= 2, got {n}")
    return any(p % 3 == 1 for p, _ in factorize(n))


def units(n: int) -> list[int]:
    """The unit group of Z_n as the ascending list of residues coprime to n."""
    if n < 2:
        raise DomainError(f"modulus must be >= 2, got {n}")
    return [k for k in range(1, n) if gcd(k, n) == 1]


def inverse_mod(k: int, n: int) -> int:
    """Multiplicative inverse of k modulo n."""
    if n < 2:
        raise DomainError(f"modulus must be >= 2, got {n}")
    if gcd(k, n) != 1:
        raise DomainError(f"{k} is not a unit modulo {n}")
    return pow(k, -1, n)
