"""Exit criteria.  Each test records one PASS/FAIL line in the terminal summary."""

import csv
import io
import sys
import time
from math import gcd
from pathlib import Path

from qhb import markov
from qhb.cli import main
from qhb.hjchain import chain_certificate
from qhb.lattice import extension_coefficient, gram_extend, kernel_vector
from qhb.markov import brute_markov_scan, enumerate_triples, residue_set
from qhb.modarith import sqrts_mod_bruteforce, sqrts_mod_p2
from qhb.obstruct import classify, coprime_pairs, es_to_c2_witness

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden" / "search_p30_cond2_not_es.txt"
MARKOV_MAXIMA_1000 = {1, 2, 5, 13, 29, 34, 89, 169, 194, 233, 433, 610, 985}


def test_1_paper_example_pairs(criterion):
    golden = [tuple(map(int, line.split())) for line in GOLDEN.read_text().splitlines()]
    out = io.StringIO()
    start = time.perf_counter()
    code = main(["search", "--p-max", "30", "--require", "cond2", "--exclude", "es", "--format", "csv"], out=out)
    elapsed = time.perf_counter() - start
    rows = list(csv.reader(io.StringIO(out.getvalue())))[1:]
    found = [(int(r[0]), int(r[1])) for r in rows]
    criterion(1, "search --p-max 30 --require cond2 --exclude es reproduces (10,1), (17,5), (26,11)",
              f"{len(found)} pairs, {elapsed * 1000:.0f} ms")
    assert code == 0
    assert {(10, 1), (17, 5), (26, 11)} <= set(found)
    assert found == golden
    for r in rows:
        assert r[4] != "" and r[6] == "" and r[7] == ""
    assert elapsed < 1.0


def test_1b_golden_file_matches_oracle(criterion):
    criterion(1, "golden file equals the brute-force root scan + quadratic ES oracle")
    sys.path.insert(0, str(ROOT / "scripts"))
    try:
        from make_golden import golden_pairs
    finally:
        sys.path.pop(0)
    golden = [tuple(map(int, line.split())) for line in GOLDEN.read_text().splitlines()]
    assert golden_pairs(30) == golden


def test_2_lemma_identities(criterion):
    start = time.perf_counter()
    failures, count = [], 0
    for p, q in coprime_pairs(2, 300):
        count += 1
        if not chain_certificate(p, q).ok:
            failures.append((p, q))
    elapsed = time.perf_counter() - start
    criterion(2, "d_n = p^2-pq-1, a_n d_n - d_(n-1) = p^2, sum (2-a_i) d_i = -pq for p <= 300",
              f"{count} pairs, {len(failures)} failures, {elapsed:.2f} s")
    assert not failures
    assert elapsed < 10.0


def test_3_lattice_certificates(criterion):
    failures, count, with_ext = [], 0, 0
    for p, q in coprime_pairs(2, 100):
        for c in sqrts_mod_p2(p * q - 1, p):
            count += 1
            try:
                g = gram_extend(p, q, c)
                kv = kernel_vector(p, q, c)
                ext = extension_coefficient(p, q, c)
            except Exception as e:  # noqa: BLE001 - every failure is a counted failure
                failures.append((p, q, c, repr(e)))
                continue
            ok = abs(g.det) == 1 and g.det == g.det_elimination
            top = g.entries[:-1]
            ok &= all(sum(m * b for m, b in zip(row, kv.b)) == 0 for row in top)
            ok &= gcd(*kv.b) == 1
            if ext is not None:
                with_ext += 1
                ok &= abs(ext.pairing) == 3 * p
            if not ok:
                failures.append((p, q, c))
    criterion(3, "|det G| = 1 (two ways), M b = 0, gcd(b) = 1, |pairing| = 3p for p <= 100",
              f"{count} roots, {with_ext} extension classes, {len(failures)} failures")
    assert not failures


def test_4_modular_square_roots(criterion):
    discrepancies, count = [], 0
    for p in range(2, 101):
        m = p * p
        for n in range(m):
            if gcd(n, p) == 1:
                count += 1
                if sqrts_mod_p2(n, p).roots != sqrts_mod_bruteforce(n, m).roots:
                    discrepancies.append((n, p))
    criterion(4, "sqrts_mod_p2 == exhaustive scan for p <= 100, n coprime to p",
              f"{count} residues, {len(discrepancies)} discrepancies")
    assert not discrepancies


def test_5_markov_oracle(criterion, fresh_triple_cache):
    start = time.perf_counter()
    tree = enumerate_triples(1000)
    scan = brute_markov_scan(1000)
    elapsed = time.perf_counter() - start
    maxima = {t.z for t in tree}
    criterion(5, "tree walk == quadratic scan up to 1000, maxima fixture",
              f"{len(tree)} triples, {elapsed * 1000:.0f} ms")
    assert tree == scan
    assert maxima == MARKOV_MAXIMA_1000
    assert elapsed < 1.0


def test_6_appendix_witness(criterion):
    failures, count = [], 0
    for tr in enumerate_triples(2000):
        coords = tr.as_tuple()
        for i, p in enumerate(coords):
            if p < 2:
                continue
            s, t = (coords[j] for j in range(3) if j != i)
            for s_, t_ in ((s, t), (t, s)):
                for q in residue_set(p, s_, t_):
                    if not (1 <= q < p and gcd(p, q) == 1):
                        continue
                    count += 1
                    try:
                        c = es_to_c2_witness(p, q, s_, t_)
                    except Exception as e:  # noqa: BLE001
                        failures.append((p, q, s_, t_, repr(e)))
                        continue
                    valid = {r for r in sqrts_mod_p2(p * q - 1, p) if (r * q + 3) % p == 0}
                    if (c * c - (p * q - 1)) % (p * p) or (c * q + 3) % p or c % (p * p) not in valid:
                        failures.append((p, q, s_, t_, c))
    criterion(6, "ES witness gives c with c^2 = pq-1 mod p^2 and p | cq+3, max <= 2000",
              f"{count} cases, {len(failures)} failures")
    assert not failures


def test_7_implications(criterion):
    counter, count = [], 0
    for p, q in coprime_pairs(2, 500):
        count += 1
        r = classify(p, q)
        c2 = r.condition2_c is not None
        if (r.es is not None and not c2) or (c2 and not r.qr_pass) or (c2 and (q * q + 9) % p):
            counter.append((p, q))
        if not r.consistent:
            counter.append((p, q, "inconsistent"))
    criterion(7, "es => cond2 => qr_pass and p | q^2+9 for p <= 500",
              f"{count} pairs, {len(counter)} counterexamples")
    assert not counter


def test_8_residue_invariance(criterion):
    counter = []
    markov_numbers = sorted({t.z for t in enumerate_triples(1000)})
    triples = enumerate_triples(50 * 1000)
    checked = 0
    for p in markov_numbers:
        sets = set()
        for tr in triples:
            if tr.z > 50 * p:
                break
            coords = tr.as_tuple()
            if p not in coords:
                continue
            i = coords.index(p)
            s, t = (coords[j] for j in range(3) if j != i)
            sets.add(residue_set(p, s, t))
            sets.add(residue_set(p, t, s))
            checked += 1
        if len(sets) != 1:
            counter.append((p, sets))
    criterion(8, "residue sets agree across all triples containing p, p <= 1000, max <= 50p",
              f"{len(markov_numbers)} Markov numbers, {checked} triples, {len(counter)} counterexamples")
    assert not counter
