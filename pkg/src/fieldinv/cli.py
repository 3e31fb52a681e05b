"""Command-line interface.

Exit status: 0 on success, 1 on bad input, 2 when an internal check fails
(degree loop divergence, a proposition violation, an orbit-count mismatch).
Data goes to stdout and is identical across identical invocations; timing
and progress go to stderr only under ``--verbose``.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from math import comb

from .degree import degree_invariants
from .errors import BadInput, Diverged, FieldInvError
from .formulas import applicable_bounds, is_prime
from .groups import enumerate_classes, format_charset, image_order, parse_charset
from .hilbert import hilbert_numerator, verify_hilbert_properties
from .survey import (
    check_propositions,
    compute_cells,
    compute_table,
    conjecture_scan,
    default_workers,
    render_table,
    survey_cell,
    table_pairs,
    write_csv,
)

log = logging.getLogger("fieldinv")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> list[int]:
    """``3..23`` (inclusive) or ``3,5,7`` or a mix like ``3..7,11``."""
    out: list[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            elif part.strip():
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from None
    return sorted(set(out))


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def _fmt_point(p) -> str:
    return "(" + ",".join(map(str, p)) + ")"


def cmd_compute(args) -> int:
    S = parse_charset(args.charset)
    res = degree_invariants(S, args.max_degree)
    payload = {
        "support": format_charset(S),
        "m": S.m,
        "index": res.index,
        "faithful": res.faithful,
        "gamma": res.gamma,
        "beta": res.beta,
        "status": res.status,
        "witnesses_gamma": [list(p) for p in res.witnesses_gamma],
        "witnesses_beta": [list(p) for p in res.witnesses_beta],
        "trace": [t.to_dict() for t in res.trace],
    }
    g = "?" if res.gamma is None else res.gamma
    b = "?" if res.beta is None else res.beta
    lines = [f"gamma={g} beta={b}"]
    if not res.complete:
        lines.append(f"status: bound not reached (max degree {res.max_degree})")
    lines.append(f"support={format_charset(S)} m={S.m} index={res.index} faithful={str(res.faithful).lower()}")
    lines.append("witnesses_gamma: " + " ".join(map(_fmt_point, res.witnesses_gamma)))
    lines.append("witnesses_beta: " + " ".join(map(_fmt_point, res.witnesses_beta)))
    if args.trace:
        for t in res.trace:
            idx = "-" if t.index_in_L is None else t.index_in_L
            lines.append(f"d={t.degree} new_points={t.new_points} rank={t.rank} index_in_L={idx}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_classes(args) -> int:
    classes = list(enumerate_classes(args.n, args.m))
    _emit(args, {"n": args.n, "m": args.m, "classes": [list(c) for c in classes]}, "\n".join(",".join(map(str, c)) for c in classes))
    return 0


def cmd_survey(args) -> int:
    out, resume = args.out, False
    if args.resume:
        out, resume = args.resume, True
    cell, records = survey_cell(args.n, args.m, args.workers, out, resume)
    if args.csv:
        write_csv(records, args.csv)
    expected = comb(args.n - 1, args.m)
    payload = cell.to_dict() | {"subsets": expected}
    text = (
        f"n={cell.n} m={cell.m} classes={cell.class_count} max_beta={cell.max_beta} "
        f"argmax={' '.join('{' + ','.join(map(str, c)) + '}' for c in cell.argmax_classes)}"
    )
    _emit(args, payload, text)
    if cell.orbit_total != expected:
        print(f"orbit sizes sum to {cell.orbit_total}, expected C({args.n - 1},{args.m}) = {expected}", file=sys.stderr)
        return 2
    return 0


def cmd_table(args) -> int:
    primes = [p for p in args.primes if p >= 3 and is_prime(p)]
    if not primes:
        raise BadInput("no odd primes in --primes")
    cells = compute_cells(table_pairs(primes, args.m), args.workers)
    table = compute_table(primes, args.m, args.workers, cells)
    payload = {"cells": [c.to_dict() for c in table.values()]}
    text = render_table(table, primes, args.m)
    if args.scan:
        scan = conjecture_scan(primes, max(args.m), args.workers, cells)
        scan = [e for e in scan if e.m in args.m]
        payload["scan"] = [e.to_dict() for e in scan]
        text += "\n" + "\n".join(
            f"p={e.p} m={e.m} max_beta={e.max_beta} bound={e.bound} {e.status}"
            + ("" if not e.counterexamples else " " + " ".join(map(str, e.counterexamples)))
            for e in scan
        )
    _emit(args, payload, text)
    return 0


def cmd_hilbert(args) -> int:
    h = hilbert_numerator(args.p, args.A1, args.A2)
    payload = h.to_dict()
    text = h.format()
    if args.check:
        props = verify_hilbert_properties(h)
        payload["properties"] = props.to_dict()
        text += "\n" + " ".join(f"{k}={str(v).lower()}" for k, v in props.to_dict().items())
        if not props.all_true:
            _emit(args, payload, text)
            return 2
    _emit(args, payload, text)
    return 0


def cmd_bounds(args) -> int:
    S = parse_charset(args.charset)
    image, _ = image_order(S)
    reports = applicable_bounds(S, image)
    payload = {"support": format_charset(S), "m": S.m, "image_order": image, "bounds": [r.to_dict() for r in reports]}
    lines = [f"support={format_charset(S)} m={S.m} image_order={image}"]
    for r in reports:
        lines.append(f"{r.name}: {r.kind.value} {r.value}" + (f" [{r.certificate}]" if r.certificate else ""))
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_check(args) -> int:
    violations = check_propositions(args.n_max, args.m_max, args.workers)
    payload = {"n_max": args.n_max, "m_max": args.m_max, "violations": [v.to_dict() for v in violations]}
    text = "\n".join(map(str, violations)) or "no violations"
    _emit(args, payload, text)
    return 2 if violations else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--verbose", "-v", action="store_true", help="progress and timing on stderr")
    par = argparse.ArgumentParser(add_help=False)
    par.add_argument("--workers", type=int, default=default_workers(), help="worker processes (default: all cores)")

    ap = _Parser(prog="fieldinv", description="Degrees of generators of fields of rational invariants of finite abelian groups.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", parents=[common], help="gamma and beta for one character set")
    p.add_argument("charset", help="e.g. 17:8,10,11 or 4x4:(1,0),(0,1)")
    p.add_argument("--max-degree", type=int, default=None, help="stop early at this degree")
    p.add_argument("--trace", action="store_true", help="print the per-degree rank/index trace")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("classes", parents=[common], help="canonical class representatives")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("survey", parents=[common, par], help="all classes of one (n, m) cell")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--out", help="JSON-lines record file")
    p.add_argument("--resume", metavar="FILE", help="continue an interrupted JSON-lines file")
    p.add_argument("--csv", help="also write records as CSV")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("table", parents=[common, par], help="maximum beta per (p, m)")
    p.add_argument("--primes", type=parse_range, default=parse_range("3..23"))
    p.add_argument("--m", type=parse_range, default=parse_range("1..10"))
    p.add_argument("--scan", action="store_true", help="also report the ceil(p/ceil(m/2)) bound per cell")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert series for two characters of Z/p")
    p.add_argument("p", type=int)
    p.add_argument("A1", type=int)
    p.add_argument("A2", type=int)
    p.add_argument("--check", action="store_true", help="verify the three structural properties")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("bounds", parents=[common], help="closed-form bounds for one character set")
    p.add_argument("charset")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("check", parents=[common, par], help="run every proposition checker")
    p.add_argument("--n-max", type=int, default=13)
    p.add_argument("--m-max", type=int, default=4)
    p.set_defaults(func=cmd_check)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(asctime)s %(name)s %(message)s")
    if getattr(args, "workers", 1) < 1:
        print("fieldinv: --workers must be >= 1", file=sys.stderr)
        return 1
    t0 = time.perf_counter()
    try:
        code = args.func(args)
    except Diverged as exc:
        print(f"fieldinv: internal error: {exc}", file=sys.stderr)
        return 2
    except (BadInput, FieldInvError) as exc:
        print(f"fieldinv: {exc}", file=sys.stderr)
        return 1
    log.info("%s finished in %.2fs", args.command, time.perf_counter() - t0)
    return code


run = main

if __name__ == "__main__":
    sys.exit(main())
