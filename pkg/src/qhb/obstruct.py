"""Per-pair classification of B_{p,q} against the three embedding obstructions.

For a coprime pair p > q >= 1:

* smooth test:      pq - 1 must be a square modulo p^2;
* condition (2):    some square root c of pq - 1 mod p^2 has p | cq + 3;
* symplectic (ES):  p^2 + s^2 + t^2 = 3pst with q = +-3s/t (mod p).

The implications ES => (2) => smooth, and (2) => p | q^2 + 9, are recorded
in every report through ``consistent``.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd

from .errors import ConsistencyFailure
from .hjchain import validate_pair
from .lattice import extension_coefficient
from .markov import ESWitness, es_condition
from .modarith import RootSet, sqrts_mod_p2

log = logging.getLogger(__name__)

SEARCH_GUARD = 10**4
FILTER_KEYS = ("qr", "cond2", "es")


@dataclass(frozen=True)
class ObstructionReport:
    p: int
    q: int
    pq_minus_1: int
    qr_pass: bool
    roots: RootSet
    condition2_c: int | None
    extension_x: int | None
    es: ESWitness | None
    q2_plus_9_mod_p: int
    consistent: bool
    es_witness_c: int | None = None

    def flag(self, key: str) -> bool:
        if key == "qr":
            return self.qr_pass
        if key == "cond2":
            return self.condition2_c is not None
        if key == "es":
            return self.es is not None
        raise KeyError(key)


def qr_obstruction_pass(p: int, q: int) -> bool:
    """False means B_{p,q} embeds smoothly in no homotopy CP^2."""
    validate_pair(p, q)
    return bool(sqrts_mod_p2(p * q - 1, p))


def _condition2_from_roots(p: int, q: int, roots: RootSet) -> int | None:
    return next((c for c in roots if (c * q + 3) % p == 0), None)


def condition2(p: int, q: int) -> int | None:
    """Smallest c in [0, p^2) with c^2 = pq - 1 (mod p^2) and p | cq + 3."""
    validate_pair(p, q)
    return _condition2_from_roots(p, q, sqrts_mod_p2(p * q - 1, p))


def q2_plus_9_divisible(p: int, q: int) -> bool:
    validate_pair(p, q)
    return (q * q + 9) % p == 0


def es_to_c2_witness(p: int, q: int, s: int, t: int) -> int:
    """Turn an ES witness (s, t) into a root c satisfying condition (2).

    a = t/s is taken modulo p^2: the identity a + 1/a = 3p only holds at
    that precision.  If q = -3s/t (mod p) then c = a, otherwise c = 1/a.
    """
    validate_pair(p, q)
    if p * p + s * s + t * t != 3 * p * s * t:
        raise ValueError(f"(p, s, t) = ({p}, {s}, {t}) is not a Markov triple")
    m = p * p
    a = t * pow(s, -1, m) % m
    r = 3 * s * pow(t, -1, p) % p
    if q % p == -r % p:
        c = a
    elif q % p == r:
        c = pow(a, -1, m)
    else:
        raise ValueError(f"q={q} is not +-3s/t modulo {p}")
    if (c * c - (p * q - 1)) % m or (c * q + 3) % p:
        raise ConsistencyFailure(f"witness c={c} fails condition (2) for ({p}, {q}, {s}, {t})")
    return c


def classify(p: int, q: int) -> ObstructionReport:
    validate_pair(p, q)
    n = p * q - 1
    roots = sqrts_mod_p2(n, p)
    c2 = _condition2_from_roots(p, q, roots)
    es = es_condition(p, q)
    q2 = (q * q + 9) % p

    ext_ok = True
    x = None
    if c2 is not None:
        try:
            ext = extension_coefficient(p, q, c2)
        except ConsistencyFailure:
            log.exception("extension class check failed for (%d, %d)", p, q)
            ext = None
        ext_ok = ext is not None
        x = ext.x if ext is not None else None

    witness_c = None
    witness_ok = True
    if es is not None:
        try:
            witness_c = es_to_c2_witness(p, q, es.s, es.t)
        except ConsistencyFailure:
            log.exception("ES witness construction failed for (%d, %d)", p, q)
        witness_ok = (
            witness_c is not None and witness_c in roots and (witness_c * q + 3) % p == 0
        )

    consistent = all(
        (
            c2 is None or bool(roots),
            c2 is None or q2 == 0,
            es is None or c2 is not None,
            c2 is None or ext_ok,
            witness_ok,
        )
    )
    return ObstructionReport(
        p=p,
        q=q,
        pq_minus_1=n,
        qr_pass=bool(roots),
        roots=roots,
        condition2_c=c2,
        extension_x=x,
        es=es,
        q2_plus_9_mod_p=q2,
        consistent=consistent,
        es_witness_c=witness_c,
    )


@dataclass(frozen=True)
class SearchFilter:
    """Flags that must be true (``require``) or false (``exclude``)."""

    require: frozenset[str] = field(default_factory=frozenset)
    exclude: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        unknown = (self.require | self.exclude) - set(FILTER_KEYS)
        if unknown:
            raise ValueError(f"unknown filter keys: {sorted(unknown)}")

    def matches(self, report: ObstructionReport) -> bool:
        return all(report.flag(k) for k in self.require) and not any(
            report.flag(k) for k in self.exclude
        )


def coprime_pairs(p_min: int, p_max: int):
    for p in range(max(p_min, 2), p_max + 1):
        for q in range(1, p):
            if gcd(p, q) == 1:
                yield p, q


def _classify_row(p: int) -> list[ObstructionReport]:
    return [classify(p, q) for q in range(1, p) if gcd(p, q) == 1]


def iter_reports(p_max: int, *, p_min: int = 2, workers: int = 1):
    """Yield a report for every coprime pair p_min <= p <= p_max in (p, q) order.

    With ``workers > 1`` rows are classified in a process pool; ``map``
    keeps the output order canonical.
    """
    ps = range(max(p_min, 2), p_max + 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for row in pool.map(_classify_row, ps, chunksize=8):
                yield from row
    else:
        for p in ps:
            yield from _classify_row(p)


def search(
    p_max: int,
    filter: SearchFilter | None = None,
    *,
    p_min: int = 2,
    guard: int = SEARCH_GUARD,
    workers: int = 1,
) -> list[ObstructionReport]:
    if p_max < 2:
        raise ValueError(f"p_max must be at least 2, got {p_max}")
    if p_max > guard:
        raise ValueError(f"p_max={p_max} exceeds the search guard {guard}")
    filter = filter or SearchFilter()
    return [r for r in iter_reports(p_max, p_min=p_min, workers=workers) if filter.matches(r)]
