"""Regenerate tests/golden/search_p30_cond2_not_es.txt from brute-force oracles.

Condition (2) comes from an exhaustive scan of residues mod p^2.  The ES
test solves t^2 - 3ps t + (p^2 + s^2) = 0 for every s <= 50p, so it uses
neither the Vieta tree nor the restriction to triples with p maximal.

    python scripts/make_golden.py [P_MAX]
"""

import math
import sys
from pathlib import Path

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden" / "search_p30_cond2_not_es.txt"


def cond2_bruteforce(p, q):
    m = p * p
    return any(c * c % m == (p * q - 1) % m and (c * q + 3) % p == 0 for c in range(m))


def es_bruteforce(p, q, s_max=None):
    s_max = s_max or 50 * p
    for s in range(1, s_max + 1):
        disc = 9 * p * p * s * s - 4 * (p * p + s * s)
        if disc < 0:
            continue
        r = math.isqrt(disc)
        if r * r != disc or (3 * p * s + r) % 2:
            continue
        for t in ((3 * p * s - r) // 2, (3 * p * s + r) // 2):
            if t > 0 and any((q - sign * 3 * s * pow(t, -1, p)) % p == 0 for sign in (1, -1)):
                return True
    return False


def golden_pairs(p_max):
    return [
        (p, q)
        for p in range(2, p_max + 1)
        for q in range(1, p)
        if math.gcd(p, q) == 1 and cond2_bruteforce(p, q) and not es_bruteforce(p, q)
    ]


if __name__ == "__main__":
    p_max = int(sys.argv[1]) if len(sys.argv) > 1 else 30
    pairs = golden_pairs(p_max)
    text = "".join(f"{p} {q}\n" for p, q in pairs)
    if p_max == 30:
        GOLDEN.write_text(text)
        print(f"wrote {len(pairs)} pairs to {GOLDEN}")
    else:
        sys.stdout.write(text)
