"""Count pairs by obstruction status and list almost-complex-but-not-symplectic candidates.

A candidate satisfies condition (2) but not ES.  Whether any such B_{p,q}
actually embeds smoothly in CP^2 is not decided here.

    python scripts/scan_candidates.py --p-max 500 --workers 4
"""

import argparse
import collections
import time

from qhb.obstruct import iter_reports


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--p-max", type=int, default=200)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--show", type=int, default=20, help="how many candidates to print")
    args = ap.parse_args()

    start = time.perf_counter()
    counts = collections.Counter()
    candidates = []
    for r in iter_reports(args.p_max, workers=args.workers):
        counts["pairs"] += 1
        counts["qr"] += r.qr_pass
        counts["cond2"] += r.condition2_c is not None
        counts["es"] += r.es is not None
        counts["inconsistent"] += not r.consistent
        if r.condition2_c is not None and r.es is None:
            candidates.append((r.p, r.q, r.condition2_c))
    elapsed = time.perf_counter() - start

    print(f"p <= {args.p_max}: {dict(counts)}  ({elapsed:.2f} s)")
    print(f"cond2 without ES: {len(candidates)} pairs")
    for p, q, c in candidates[: args.show]:
        print(f"  ({p}, {q})  c = {c}")


if __name__ == "__main__":
    main()
