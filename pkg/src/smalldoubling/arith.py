"""Small number-theoretic helpers shared by the rest of the package."""

from __future__ import annotations

from functools import lru_cache
from math import gcd


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    """Positive divisors of ``n`` in ascending order."""
    if n < 1:
        raise ValueError(f"divisors() needs n >= 1, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def totient_table(limit: int) -> list[int]:
    """Euler phi for 0..limit by sieve (phi[0] is set to 0)."""
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:
            for k in range(p, limit + 1, p):
                phi[k] -= phi[k] // p
    if limit >= 0:
        phi[0] = 0
    return phi


@lru_cache(maxsize=256)
def units(n: int) -> tuple[int, ...]:
    """Residues u in [1, n) (or [0] for n = 1) with gcd(u, n) = 1."""
    if n == 1:
        return (0,)
    return tuple(u for u in range(1, n) if gcd(u, n) == 1)


def element_order(x: int, n: int) -> int:
    """Additive order of x in Z_n."""
    return n // gcd(x % n, n)
