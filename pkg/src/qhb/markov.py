"""Solutions of x^2 + y^2 + z^2 = 3xyz and the residue test q = +-3s/t mod p.

Every positive solution is reached from (1, 1, 1) by Vieta moves
x -> 3yz - x, so a breadth-first walk pruned at the bound is complete.
``brute_markov_scan`` solves the quadratic in z directly and serves as the
independent oracle.
"""

from __future__ import annotations

import math
import os
import threading
from collections import deque
from dataclasses import dataclass
from pathlib import Path

from .errors import ConsistencyFailure, ModulusTooLarge
from .hjchain import validate_pair

SCAN_GUARD = 10**5
CACHE_ENV = "QHB_MARKOV_CACHE"


@dataclass(frozen=True, order=True)
class MarkovTriple:
    x: int
    y: int
    z: int

    @classmethod
    def of(cls, *coords: int) -> "MarkovTriple":
        x, y, z = sorted(coords)
        return cls(x, y, z)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    def is_solution(self) -> bool:
        x, y, z = self.x, self.y, self.z
        return x * x + y * y + z * z == 3 * x * y * z

    def sort_key(self) -> tuple[int, int, int]:
        return (self.z, self.y, self.x)


@dataclass(frozen=True)
class ESWitness:
    p: int
    q: int
    s: int
    t: int
    triple: MarkovTriple
    sign: int


def vieta_neighbors(tr: MarkovTriple) -> list[MarkovTriple]:
    """The three single-coordinate moves, normalized and deduplicated."""
    x, y, z = tr.as_tuple()
    moves = (
        MarkovTriple.of(3 * y * z - x, y, z),
        MarkovTriple.of(x, 3 * x * z - y, z),
        MarkovTriple.of(x, y, 3 * x * y - z),
    )
    return sorted(set(moves), key=MarkovTriple.sort_key)


def _walk(max_z: int) -> list[MarkovTriple]:
    root = MarkovTriple(1, 1, 1)
    seen = {root}
    queue = deque([root])
    while queue:
        for child in vieta_neighbors(queue.popleft()):
            if child.z <= max_z and child not in seen:
                seen.add(child)
                queue.append(child)
    return sorted(seen, key=MarkovTriple.sort_key)


# Process-wide cache of the walk; readers always get a complete snapshot.
_cache_lock = threading.Lock()
_cache: tuple[int, tuple[MarkovTriple, ...]] = (0, ())


def _read_cache_file(path: Path) -> tuple[int, tuple[MarkovTriple, ...]] | None:
    try:
        lines = path.read_text().split("\n")
    except OSError:
        return None
    triples = []
    for line in lines:
        if line.strip():
            x, y, z = map(int, line.split())
            triples.append(MarkovTriple(x, y, z))
    if not triples:
        return None
    # The file has no header, so its largest z is the only bound we can trust.
    return max(t.z for t in triples), tuple(triples)


def write_cache_file(path, triples) -> None:
    Path(path).write_text("".join(f"{t.x} {t.y} {t.z}\n" for t in triples))


def enumerate_triples(max_z: int) -> list[MarkovTriple]:
    """All normalized triples with z <= max_z, sorted by (z, y, x)."""
    global _cache
    if max_z < 1:
        raise ValueError(f"max_z must be positive, got {max_z}")
    with _cache_lock:
        bound, triples = _cache
        if bound < max_z:
            cache_path = os.environ.get(CACHE_ENV)
            loaded = _read_cache_file(Path(cache_path)) if cache_path else None
            if loaded is not None and loaded[0] >= max_z:
                bound, triples = loaded
            else:
                triples = tuple(_walk(max_z))
                bound = max_z
                if cache_path:
                    write_cache_file(cache_path, triples)
            _cache = (bound, triples)
    return [t for t in triples if t.z <= max_z]


def brute_markov_scan(max_z: int) -> list[MarkovTriple]:
    """Oracle: for x <= y, solve z^2 - 3xy z + (x^2 + y^2) = 0 over the integers."""
    if max_z > SCAN_GUARD:
        raise ModulusTooLarge(f"scan bound {max_z} exceeds {SCAN_GUARD}")
    found = set()
    for x in range(1, max_z + 1):
        if 3 * x * x > 2 * max_z + 3:
            break
        for y in range(x, max_z + 1):
            # larger root >= 3xy/2; the smaller root is below y except at (1, 1)
            if 3 * x * y > 2 * max_z + 3:
                break
            disc = 9 * x * x * y * y - 4 * (x * x + y * y)
            r = math.isqrt(disc)
            if r * r != disc or (3 * x * y + r) % 2:
                continue
            for z in ((3 * x * y - r) // 2, (3 * x * y + r) // 2):
                if y <= z <= max_z:
                    found.add(MarkovTriple(x, y, z))
    return sorted(found, key=MarkovTriple.sort_key)


def triples_containing(p: int) -> list[MarkovTriple]:
    """Triples whose largest entry is p; empty unless p is a Markov number."""
    if p < 1:
        raise ValueError(f"p must be positive, got {p}")
    return [t for t in enumerate_triples(p) if t.z == p]


def residue_set(p: int, s: int, t: int) -> frozenset[int]:
    """{3s/t, -3s/t} modulo p."""
    try:
        t_inv = pow(t, -1, p)
    except ValueError:
        raise ConsistencyFailure(f"t={t} is not invertible modulo p={p}") from None
    r = 3 * s * t_inv % p
    return frozenset({r, -r % p})


def es_condition(p: int, q: int) -> ESWitness | None:
    """First (s, t) with p^2 + s^2 + t^2 = 3pst and q = +-3s/t (mod p)."""
    validate_pair(p, q)
    for tr in triples_containing(p):
        for s, t in ((tr.x, tr.y), (tr.y, tr.x)):
            r = 3 * s * pow(t, -1, p) % p
            if q % p == r:
                return ESWitness(p, q, s, t, tr, 1)
            if q % p == -r % p:
                return ESWitness(p, q, s, t, tr, -1)
    return None
