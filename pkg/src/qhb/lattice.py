"""Unimodular completion of the plumbing lattice and the vectors it carries.

The (n+1) x (n+1) Gram matrix has -a_1, ..., -a_n, -a_{n+1} on the diagonal,
ones next to it, except that the coupling between the last two basis
vectors is ``c`` rather than 1.  With leading-block continuants D_k the
determinant is

    det G = -a_{n+1} D_n - c^2 D_{n-1}

which is linear in a_{n+1}, so the completion is found by solving
det G = (-1)^n, the sign forced by signature (1, n).  Since
D_n = (-1)^n p^2 and D_{n-1} = (-1)^(n-1) (p^2 - pq - 1), a solution exists
exactly when c^2 = pq - 1 (mod p^2).  Every determinant is
re-checked by Bareiss elimination on the dense matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

from .errors import ConsistencyFailure, NoUnimodularCompletion
from .hjchain import chain_certificate, hj_expand, validate_pair


@dataclass(frozen=True)
class ExtendedGram:
    p: int
    q: int
    c: int
    a: tuple[int, ...]
    a_last: int
    entries: tuple[tuple[int, ...], ...]
    det: int
    det_elimination: int


@dataclass(frozen=True)
class KernelVector:
    b: tuple[int, ...]
    sign_h: int


@dataclass(frozen=True)
class ExtensionClass:
    coeffs: tuple[int, ...]
    x: int
    pairing: int


def tridiag_continuants(a) -> list[int]:
    """Leading principal minors D_1..D_n of tridiag(1, -a_i, 1)."""
    out = []
    prev2, prev1 = 0, 1
    for ai in a:
        cur = -ai * prev1 - prev2
        out.append(cur)
        prev2, prev1 = prev1, cur
    return out


def bareiss_det(matrix) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination.

    Rows are held as {column: value} dicts so banded inputs stay cheap.
    """
    rows = [{j: v for j, v in enumerate(row) if v} for row in matrix]
    size = len(rows)
    if any(len(row) != size for row in matrix):
        raise ValueError("matrix must be square")
    sign, prev = 1, 1
    for k in range(size - 1):
        if not rows[k].get(k):
            swap = next((i for i in range(k + 1, size) if rows[i].get(k)), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot_row = rows[k]
        pivot = pivot_row[k]
        for i in range(k + 1, size):
            row = rows[i]
            lead = row.pop(k, 0)
            new = {}
            for j in row.keys() | pivot_row.keys():
                if j <= k:
                    continue
                v = pivot * row.get(j, 0) - lead * pivot_row.get(j, 0)
                if v:
                    q, r = divmod(v, prev)
                    if r:
                        raise ConsistencyFailure("Bareiss division was not exact")
                    new[j] = q
            rows[i] = new
        prev = pivot
    return sign * rows[-1].get(size - 1, 0)


def gram_matrix(a, c: int, a_last: int) -> tuple[tuple[int, ...], ...]:
    n = len(a)
    g = [[0] * (n + 1) for _ in range(n + 1)]
    for i, ai in enumerate(a):
        g[i][i] = -ai
        if i + 1 < n:
            g[i][i + 1] = g[i + 1][i] = 1
    g[n - 1][n] = g[n][n - 1] = c
    g[n][n] = -a_last
    return tuple(tuple(row) for row in g)


def gram_extend(p: int, q: int, c: int) -> ExtendedGram:
    validate_pair(p, q)
    a = hj_expand(p * p, p * q - 1).a
    D = tridiag_continuants(a)
    d_n = D[-1]
    d_n1 = D[-2] if len(D) > 1 else 1
    # Signature (1, n): the plumbing block is negative definite and g.g = p^2 > 0,
    # so det G = (-1)^n.  The opposite sign is reachable when c^2 = -(pq - 1).
    target = (-1) ** len(a)
    numer = -target - c * c * d_n1
    if numer % d_n:
        raise NoUnimodularCompletion(
            f"no a_(n+1) makes the Gram matrix unimodular for (p, q, c) = ({p}, {q}, {c})"
        )
    a_last = numer // d_n
    det = -a_last * d_n - c * c * d_n1
    entries = gram_matrix(a, c, a_last)
    det_elim = bareiss_det(entries)
    if det_elim != det or abs(det) != 1:
        raise ConsistencyFailure(
            f"determinant mismatch for ({p}, {q}, {c}): continuant {det}, elimination {det_elim}"
        )
    return ExtendedGram(p, q, c, a, a_last, entries, det, det_elim)


def _check_root(p: int, q: int, c: int) -> None:
    validate_pair(p, q)
    if (c * c - (p * q - 1)) % (p * p):
        raise ValueError(f"c={c} is not a square root of pq-1 modulo p^2")


def kernel_vector(p: int, q: int, c: int) -> KernelVector:
    _check_root(p, q, c)
    cert = chain_certificate(p, q)
    a, d = cert.string.a, cert.d
    n = len(a)
    b = tuple(c * di for di in d) + (p * p,)
    # rows of the top n x (n+1) block of the Gram matrix
    for i in range(n):
        acc = -a[i] * b[i]
        if i > 0:
            acc += b[i - 1]
        acc += b[i + 1] * (c if i == n - 1 else 1)
        if acc:
            raise ConsistencyFailure(f"row {i + 1} of M.b is {acc} for ({p}, {q}, {c})")
    if reduce(math.gcd, b) != 1:
        raise ConsistencyFailure(f"kernel vector {b} is not primitive")
    if c % b[0]:
        raise ConsistencyFailure("b_1 does not divide c")
    return KernelVector(b, c // b[0])


def extension_coefficient(p: int, q: int, c: int) -> ExtensionClass | None:
    """The dual-basis class with pairing +-3p against g, if p | cq + 3."""
    _check_root(p, q, c)
    if (c * q + 3) % p:
        return None
    x = (c * q + 3) // p
    a = hj_expand(p * p, p * q - 1).a
    b = kernel_vector(p, q, c).b
    coeffs = tuple(2 - ai for ai in a)
    pairing = sum(ci * bi for ci, bi in zip(coeffs, b)) + x * b[-1]
    if abs(pairing) != 3 * p:
        raise ConsistencyFailure(f"pairing {pairing} != +-{3 * p} for ({p}, {q}, {c})")
    return ExtensionClass(coeffs, x, pairing)
