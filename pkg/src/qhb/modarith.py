"""Exact modular arithmetic: inverses and all square roots modulo p^2.

``sqrts_mod_p2`` works prime by prime: Tonelli-Shanks modulo each odd prime
factor of p followed by Hensel lifting, a separate 2-adic lift for the even
part, and CRT to glue the local root sets back together.
``sqrts_mod_bruteforce`` is the exhaustive oracle it is tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import ModulusTooLarge

BRUTEFORCE_GUARD = 10**8
TABLE_LIMIT = 10**6


@dataclass(frozen=True)
class RootSet:
    """All square roots of ``n`` modulo ``m``, sorted, each in [0, m)."""

    n: int
    m: int
    roots: tuple[int, ...]

    def __bool__(self) -> bool:
        return bool(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    def __contains__(self, r: object) -> bool:
        return isinstance(r, int) and r % self.m in self.roots


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def mod_inverse(a: int, m: int) -> int | None:
    """Inverse of ``a`` modulo ``m`` in [0, m), or None when it does not exist."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if m == 1:
        return 0
    try:
        return pow(a, -1, m)
    except ValueError:
        return None


@lru_cache(maxsize=32)
def _square_table(m: int) -> dict[int, tuple[int, ...]]:
    table: dict[int, list[int]] = {}
    for r in range(m):
        table.setdefault(r * r % m, []).append(r)
    return {k: tuple(v) for k, v in table.items()}


def sqrts_mod_bruteforce(n: int, m: int) -> RootSet:
    """Exhaustive scan of [0, m).  Small moduli share one memoized scan."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if m > BRUTEFORCE_GUARD:
        raise ModulusTooLarge(f"exhaustive scan modulo {m} exceeds {BRUTEFORCE_GUARD}")
    n %= m
    if m <= TABLE_LIMIT:
        return RootSet(n, m, _square_table(m).get(n, ()))
    return RootSet(n, m, tuple(r for r in range(m) if r * r % m == n))


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Trial division; returns ((prime, exponent), ...) in increasing order."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def tonelli_shanks(n: int, p: int) -> int | None:
    """A square root of ``n`` modulo the odd prime ``p``, or None."""
    n %= p
    if n == 0:
        return 0
    if pow(n, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _hensel_lift_odd(x: int, n: int, p: int, k: int) -> int:
    # Newton step x <- x - (x^2 - n)/(2x); valid because p is odd and p does not divide n.
    mod = p
    for _ in range(k - 1):
        mod *= p
        x = (x - (x * x - n) * pow(2 * x, -1, mod)) % mod
    return x


def _sqrts_odd_prime_power(n: int, p: int, k: int) -> list[int]:
    x = tonelli_shanks(n, p)
    if x is None:
        return []
    mod = p**k
    x = _hensel_lift_odd(x, n, p, k)
    return sorted({x, (-x) % mod})


def _sqrts_two_power(n: int, k: int) -> list[int]:
    """Roots of an odd ``n`` modulo 2^k."""
    mod = 1 << k
    n %= mod
    if k == 1:
        return [1]
    if k == 2:
        return [1, 3] if n % 4 == 1 else []
    if n % 8 != 1:
        return []
    # if x^2 = n mod 2^j (j >= 3) then x or x + 2^(j-1) works mod 2^(j+1)
    x = 1
    for j in range(3, k):
        if (x * x - n) % (1 << (j + 1)):
            x += 1 << (j - 1)
    half = mod >> 1
    return sorted({x % mod, -x % mod, (x + half) % mod, (-x + half) % mod})


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    return (r1 + m1 * ((r2 - r1) * pow(m1, -1, m2) % m2)) % (m1 * m2)


def sqrts_mod_p2(n: int, p: int) -> RootSet:
    """All square roots of ``n`` modulo p^2, for n coprime to p."""
    if p < 2:
        raise ValueError(f"p must be at least 2, got {p}")
    if math.gcd(n, p) != 1:
        raise ValueError(f"n={n} must be coprime to p={p}")
    m = p * p
    n %= m
    local: list[tuple[list[int], int]] = []
    for prime, e in factorize(p):
        if prime == 2:
            roots = _sqrts_two_power(n, 2 * e)
        else:
            roots = _sqrts_odd_prime_power(n, prime, 2 * e)
        if not roots:
            return RootSet(n, m, ())
        local.append((roots, prime ** (2 * e)))
    combined = set()
    for choice in product(*(roots for roots, _ in local)):
        r, mod = 0, 1
        for ri, (_, mi) in zip(choice, local):
            r, mod = _crt_pair(r, mod, ri, mi), mod * mi
        combined.add(r)
    return RootSet(n, m, tuple(sorted(combined)))


def is_qr_mod_p2(n: int, p: int) -> bool:
    return bool(sqrts_mod_p2(n, p))
