"""Command line front end.

    qhb classify -p 10 -q 1 [--format table|json|csv]
    qhb verify   -p 5 -q 1  [--format table|json]
    qhb search   --p-max 30 --require cond2 --exclude es [--format ...] [--out PATH]
    qhb markov   --max 1000 [--check] [--format ...]

Exit codes: 0 success, 1 bad input, 2 internal consistency violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from contextlib import nullcontext

from .errors import ConsistencyFailure, InvalidPair, ModulusTooLarge, NoUnimodularCompletion
from .hjchain import chain_certificate, validate_pair
from .lattice import extension_coefficient, gram_extend, kernel_vector
from .markov import brute_markov_scan, enumerate_triples
from .modarith import sqrts_mod_p2
from .obstruct import SEARCH_GUARD, ObstructionReport, SearchFilter, classify, iter_reports

SCHEMA_VERSION = "1"
CSV_COLUMNS = (
    "p",
    "q",
    "pq_minus_1",
    "qr_pass",
    "condition2_c",
    "extension_x",
    "es_s",
    "es_t",
    "q2_plus_9_mod_p",
    "consistent",
)

EXIT_OK, EXIT_INPUT, EXIT_CONSISTENCY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# -- serialization ----------------------------------------------------------


def report_to_dict(r: ObstructionReport) -> dict:
    es = None
    if r.es is not None:
        es = {
            "s": r.es.s,
            "t": r.es.t,
            "triple": list(r.es.triple.as_tuple()),
            "sign": r.es.sign,
        }
    return {
        "p": r.p,
        "q": r.q,
        "pq_minus_1": r.pq_minus_1,
        "qr_pass": r.qr_pass,
        "roots": list(r.roots.roots),
        "condition2_c": r.condition2_c,
        "extension_x": r.extension_x,
        "es": es,
        "es_witness_c": r.es_witness_c,
        "q2_plus_9_mod_p": r.q2_plus_9_mod_p,
        "consistent": r.consistent,
    }


def report_csv_row(r: ObstructionReport) -> list:
    def cell(v):
        if v is None:
            return ""
        if isinstance(v, bool):
            return "true" if v else "false"
        return v

    return [
        cell(v)
        for v in (
            r.p,
            r.q,
            r.pq_minus_1,
            r.qr_pass,
            r.condition2_c,
            r.extension_x,
            r.es.s if r.es else None,
            r.es.t if r.es else None,
            r.q2_plus_9_mod_p,
            r.consistent,
        )
    ]


def dumps_document(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def make_document(command: str, inputs: dict, results: list, started: float) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "timing_ms": int((time.perf_counter() - started) * 1000),
    }


_TABLE_HEADER = ("p", "q", "pq-1", "qr", "cond2_c", "x", "es(s,t)", "q^2+9 mod p", "ok")
_TABLE_FMT = "{:>6} {:>6} {:>10} {:>5} {:>10} {:>8} {:>14} {:>11} {:>5}"


def _table_row(r: ObstructionReport) -> str:
    def show(v):
        return "-" if v is None else str(v)

    es = f"({r.es.s},{r.es.t})" if r.es else "-"
    return _TABLE_FMT.format(
        r.p,
        r.q,
        r.pq_minus_1,
        "yes" if r.qr_pass else "no",
        show(r.condition2_c),
        show(r.extension_x),
        es,
        r.q2_plus_9_mod_p,
        "yes" if r.consistent else "NO",
    )


# -- commands ---------------------------------------------------------------


def cmd_classify(args, out) -> int:
    started = time.perf_counter()
    validate_pair(args.p, args.q)
    report = classify(args.p, args.q)
    if args.format == "json":
        doc = make_document("classify", {"p": args.p, "q": args.q}, [report_to_dict(report)], started)
        out.write(dumps_document(doc))
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        w.writerow(report_csv_row(report))
    else:
        out.write(_TABLE_FMT.format(*_TABLE_HEADER) + "\n")
        out.write(_table_row(report) + "\n")
    return EXIT_OK if report.consistent else EXIT_CONSISTENCY


def certificate_payload(p: int, q: int) -> dict:
    """Every lattice identity for (p, q), one entry per square root c."""
    cert = chain_certificate(p, q)
    roots = sqrts_mod_p2(p * q - 1, p)
    per_root = []
    for c in roots:
        entry = {"c": c, "ok": True}
        try:
            g = gram_extend(p, q, c)
            kv = kernel_vector(p, q, c)
            ext = extension_coefficient(p, q, c)
            entry.update(
                a_last=g.a_last,
                det=g.det,
                det_elimination=g.det_elimination,
                b=list(kv.b),
                x=ext.x if ext else None,
                pairing=ext.pairing if ext else None,
            )
        except (ConsistencyFailure, NoUnimodularCompletion) as e:
            entry.update(ok=False, error=str(e))
        per_root.append(entry)
    return {
        "p": p,
        "q": q,
        "a": list(cert.string.a),
        "d": list(cert.d),
        "identities": {
            "dn_check": cert.dn_check,
            "p2_check": cert.p2_check,
            "sum_check": cert.sum_check,
        },
        "roots": per_root,
        "ok": cert.ok and all(e["ok"] for e in per_root),
    }


def _print_certificate(payload: dict, out) -> None:
    p, q = payload["p"], payload["q"]
    ids = payload["identities"]
    out.write(f"(p, q) = ({p}, {q})\n")
    out.write(f"  a = {payload['a']}\n")
    out.write(f"  d = {payload['d']}\n")
    out.write(f"  d_n = p^2 - pq - 1          : {ids['dn_check']}\n")
    out.write(f"  a_n d_n - d_(n-1) = p^2     : {ids['p2_check']}\n")
    out.write(f"  sum (2 - a_i) d_i = -pq     : {ids['sum_check']}\n")
    if not payload["roots"]:
        out.write(f"  pq - 1 = {p * q - 1} has no square root modulo {p * p}\n")
    for e in payload["roots"]:
        if not e["ok"]:
            out.write(f"  c={e['c']}: FAILED {e['error']}\n")
            continue
        x = "-" if e["x"] is None else f"{e['x']} (pairing {e['pairing']})"
        out.write(
            f"  c={e['c']}: a_(n+1)={e['a_last']} det={e['det']} b={tuple(e['b'])} x={x}\n"
        )
    out.write(f"  all identities hold: {payload['ok']}\n")


def cmd_verify(args, out) -> int:
    started = time.perf_counter()
    validate_pair(args.p, args.q)
    payload = certificate_payload(args.p, args.q)
    if args.format == "json":
        doc = make_document("verify", {"p": args.p, "q": args.q}, [payload], started)
        out.write(dumps_document(doc))
    else:
        _print_certificate(payload, out)
    return EXIT_OK if payload["ok"] else EXIT_CONSISTENCY


def cmd_search(args, out) -> int:
    if args.p_max < 2:
        raise UsageError("--p-max must be at least 2")
    if args.p_max > args.guard:
        raise UsageError(f"--p-max {args.p_max} exceeds the guard {args.guard} (raise it with --guard)")
    flt = SearchFilter(frozenset(args.require), frozenset(args.exclude))
    started = time.perf_counter()
    total = matched = bad = 0
    target = open(args.out, "w", newline="") if args.out else nullcontext(out)
    with target as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if args.format == "csv":
            writer.writerow(CSV_COLUMNS)
        elif args.format == "table":
            fh.write(_TABLE_FMT.format(*_TABLE_HEADER) + "\n")
        for report in iter_reports(args.p_max, workers=args.workers):
            total += 1
            bad += not report.consistent
            if not flt.matches(report):
                continue
            matched += 1
            if args.format == "json":
                fh.write(json.dumps(report_to_dict(report)) + "\n")
            elif args.format == "csv":
                writer.writerow(report_csv_row(report))
            else:
                fh.write(_table_row(report) + "\n")
    elapsed = int((time.perf_counter() - started) * 1000)
    print(
        f"search: {total} pairs classified, {matched} matched, {bad} inconsistent ({elapsed} ms)",
        file=sys.stderr,
    )
    return EXIT_CONSISTENCY if bad else EXIT_OK


def cmd_markov(args, out) -> int:
    if args.max < 1:
        raise UsageError("--max must be at least 1")
    started = time.perf_counter()
    triples = enumerate_triples(args.max)
    status = EXIT_OK
    if args.check:
        oracle = brute_markov_scan(args.max)
        agree = oracle == triples
        maxima = len({t.z for t in triples})
        print(
            f"markov: {len(triples)} triples, {maxima} distinct maxima, "
            f"oracle {'agrees' if agree else 'DISAGREES'}",
            file=sys.stderr,
        )
        if not agree:
            status = EXIT_CONSISTENCY
    if args.format == "json":
        inputs = {"max": args.max, "check": args.check}
        doc = make_document("markov", inputs, [list(t.as_tuple()) for t in triples], started)
        out.write(dumps_document(doc))
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(("x", "y", "z"))
        w.writerows(t.as_tuple() for t in triples)
    else:
        for t in triples:
            out.write(f"({t.x},{t.y},{t.z})\n")
    return status


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qhb", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def pair_args(sp):
        sp.add_argument("-p", type=int, required=True)
        sp.add_argument("-q", type=int, required=True)

    sp = sub.add_parser("classify", help="classify one pair (p, q)")
    pair_args(sp)
    sp.add_argument("--format", choices=("table", "json", "csv"), default="table")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("verify", help="print the full lattice certificate for (p, q)")
    pair_args(sp)
    sp.add_argument("--format", choices=("table", "json"), default="table")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("search", help="classify all coprime pairs up to --p-max")
    sp.add_argument("--p-max", type=int, required=True)
    sp.add_argument("--require", action="append", default=[], choices=("qr", "cond2", "es"))
    sp.add_argument("--exclude", action="append", default=[], choices=("qr", "cond2", "es"))
    sp.add_argument("--format", choices=("table", "json", "csv"), default="table")
    sp.add_argument("--out", metavar="PATH")
    sp.add_argument("--guard", type=int, default=SEARCH_GUARD)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("markov", help="list Markov triples with max <= --max")
    sp.add_argument("--max", type=int, required=True)
    sp.add_argument("--check", action="store_true", help="compare against the brute-force scan")
    sp.add_argument("--format", choices=("table", "json", "csv"), default="table")
    sp.set_defaults(func=cmd_markov)
    return parser


def main(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    out = out if out is not None else sys.stdout
    try:
        return args.func(args, out)
    except (InvalidPair, UsageError, ModulusTooLarge, OSError) as e:
        print(f"qhb: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyFailure as e:
        print(f"qhb: internal consistency failure: {e}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
