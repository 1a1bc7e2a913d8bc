"""Hirzebruch-Jung strings for p^2/(pq-1) and the d-vector recursion.

A string (a_1, ..., a_n) with every a_i >= 2 encodes

    a_1 - 1/(a_2 - 1/(... - 1/a_n))

For the pair (p, q) the string of p^2/(pq-1) gives the d-vector
d_1 = 1, d_2 = a_1, d_s = a_{s-1} d_{s-1} - d_{s-2}, and three identities
must hold:

    d_n = p^2 - pq - 1
    a_n d_n - d_{n-1} = p^2          (d_0 := 0 when n = 1)
    sum (2 - a_i) d_i = -pq
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidPair


@dataclass(frozen=True)
class HJString:
    num: int
    den: int
    a: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class ChainCertificate:
    p: int
    q: int
    string: HJString
    d: tuple[int, ...]
    sum_check: bool
    dn_check: bool
    p2_check: bool

    @property
    def ok(self) -> bool:
        return self.sum_check and self.dn_check and self.p2_check


def validate_pair(p: int, q: int) -> None:
    if p < 2:
        raise InvalidPair(f"p must be at least 2, got p={p}")
    if not 1 <= q < p:
        raise InvalidPair(f"need p > q >= 1, got p={p}, q={q}")
    if math.gcd(p, q) != 1:
        raise InvalidPair("p and q must be coprime")


def hj_expand(num: int, den: int) -> HJString:
    if not num > den >= 1:
        raise InvalidPair(f"need num > den >= 1, got {num}/{den}")
    if math.gcd(num, den) != 1:
        raise InvalidPair(f"{num}/{den} is not in lowest terms")
    a = []
    n, d = num, den
    while d:
        k = -(-n // d)
        a.append(k)
        n, d = d, k * d - n
    # the tight bound for an all-2 string (n+1)/n
    if len(a) > num - 1:
        raise AssertionError(f"string for {num}/{den} has impossible length {len(a)}")
    return HJString(num, den, tuple(a))


def hj_evaluate(a) -> tuple[int, int]:
    """Evaluate a string back to front; returns (num, den) in lowest terms.

    Entries of 1 are tolerated as long as every intermediate value stays
    positive, which is enough for round-trip testing.
    """
    a = list(a)
    if not a:
        raise ValueError("empty string")
    num, den = a[-1], 1
    if num < 1:
        raise ValueError(f"non-positive partial value in {a}")
    for ai in reversed(a[:-1]):
        # ai - den/num
        num, den = ai * num - den, num
        if num <= 0:
            raise ValueError(f"non-positive partial value in {a}")
    g = math.gcd(num, den)
    return num // g, den // g


def d_vector(a) -> tuple[int, ...]:
    a = tuple(a)
    if not a:
        raise ValueError("empty string")
    d = [1]
    prev = 0
    for ai in a[:-1]:
        d_next = ai * d[-1] - prev
        prev = d[-1]
        d.append(d_next)
    return tuple(d)


def chain_certificate(p: int, q: int) -> ChainCertificate:
    validate_pair(p, q)
    string = hj_expand(p * p, p * q - 1)
    a = string.a
    d = d_vector(a)
    d_prev = d[-2] if len(d) > 1 else 0
    return ChainCertificate(
        p=p,
        q=q,
        string=string,
        d=d,
        sum_check=sum((2 - ai) * di for ai, di in zip(a, d)) == -p * q,
        dn_check=d[-1] == p * p - p * q - 1,
        p2_check=a[-1] * d[-1] - d_prev == p * p,
    )
