"""Command-line entry point.

    phieq sweep --eq 1.1 --xmax 10 --mmax 7
    phieq verify-lemma --id 3.7-wieferich
    phieq bounds --section 4.3

Exit codes: 0 pass, 1 mathematical discrepancy, 2 incomplete, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import __version__
from .arith import DEFAULT_EFFORT_CAP, DEFAULT_SEED
from .bounds import SECTIONS, bound_ids, chain_audit, evaluate_bound
from .model import EXPONENT_ORDERS, NU2_FILTERS, EquationId, SearchBox
from .scans import LEMMA_IDS, verify_lemma
from .search import Verdict, sweep

EXIT_OK, EXIT_DISCREPANCY, EXIT_INCOMPLETE, EXIT_USAGE = 0, 1, 2, 64
EFFORT_ENV = "PHIEQ_EFFORT_CAP"

VERDICT_EXIT = {Verdict.MATCH: EXIT_OK, Verdict.UNEXPECTED_SOLUTION: EXIT_DISCREPANCY, Verdict.INCOMPLETE: EXIT_INCOMPLETE}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None


def _default_cap() -> int:
    raw = os.environ.get(EFFORT_ENV)
    if raw is None:
        return DEFAULT_EFFORT_CAP
    try:
        return _positive(raw)
    except argparse.ArgumentTypeError as e:
        raise UsageError(f"{EFFORT_ENV}: {e}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="phieq", description="Exact checks for totient equations over Lucas-type quotients.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sweep", help="sweep a box for solutions and certify against the known families")
    s.add_argument("--eq", required=True, help="equation: 1.1 .. 1.6 or E11 .. E16")
    s.add_argument("--xmax", type=_positive, required=True)
    s.add_argument("--mmax", type=_positive, required=True, help="bound for both exponents")
    s.add_argument("--zmax", type=_positive)
    s.add_argument("--z-rule", choices=["x+y"], help="restrict z to 1..x+y")
    s.add_argument("--z-exclude", type=_int_list, action="append", default=[], help="z values to skip, e.g. 2")
    s.add_argument("--exponent-order", choices=EXPONENT_ORDERS, default="all")
    s.add_argument("--coprime-exponents", action="store_true", help="only gcd(m, n) = 1")
    s.add_argument("--nu2", choices=NU2_FILTERS, default="any", help="filter on the 2-adic valuations of x and y")
    s.add_argument("--effort-cap", type=_positive, help=f"factoring budget (default ${EFFORT_ENV} or {DEFAULT_EFFORT_CAP})")
    s.add_argument("--workers", type=_positive, default=1)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--output", help="write the report here instead of stdout")
    s.add_argument("--format", choices=["jsonl", "table"], default="jsonl")
    s.add_argument("--manifest", action="store_true", help="start the report with the run configuration")
    s.add_argument("--csv", help="also write the found solutions as CSV")

    v = sub.add_parser("verify-lemma", help="rerun one of the finite computer checks")
    v.add_argument("--id", required=True, dest="lemma_id")
    v.add_argument("--output")
    v.add_argument("--format", choices=["jsonl", "table"], default="jsonl")

    b = sub.add_parser("bounds", help="audit the numeric constants of the analytic bounds")
    g = b.add_mutually_exclusive_group()
    g.add_argument("--section", help="one of " + ", ".join(SECTIONS) + " or all")
    g.add_argument("--id", dest="bound_id")
    b.add_argument("--output")
    b.add_argument("--format", choices=["jsonl", "table"], default="jsonl")
    return p


def _open_out(path):
    return open(path, "w", encoding="utf-8", newline="\n") if path else sys.stdout


def _dump(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def _sweep_config(args) -> tuple[EquationId, SearchBox, int]:
    try:
        eq = EquationId.parse(args.eq)
    except ValueError as e:
        raise UsageError(str(e)) from None
    cap = args.effort_cap if args.effort_cap is not None else _default_cap()
    exclusions = frozenset(z for chunk in args.z_exclude for z in chunk)
    if eq.has_z and args.zmax is None and args.z_rule is None:
        raise UsageError(f"{eq.value} needs --zmax or --z-rule")
    if not eq.has_z and (args.zmax is not None or args.z_rule or exclusions):
        raise UsageError(f"{eq.value} has no z; drop the z options")
    try:
        box = SearchBox(
            x_max=args.xmax,
            m_max=args.mmax,
            z_max=args.zmax,
            z_rule=args.z_rule,
            z_exclusions=exclusions,
            effort_cap=cap,
            seed=args.seed,
            exponent_order=args.exponent_order,
            coprime_exponents=args.coprime_exponents,
            nu2=args.nu2,
        )
    except ValueError as e:
        raise UsageError(str(e)) from None
    return eq, box, args.workers


def cmd_sweep(args) -> int:
    eq, box, workers = _sweep_config(args)
    if eq is EquationId.E13:
        sys.stderr.write(
            "note: E13 is only claimed solution-free at z = 1 and z = x - y, by earlier work;"
            " a general z sweep is exploratory and has no family list to match\n"
        )
    report = sweep(eq, box, workers)
    surplus = set(report.surplus)
    # offending tuples first, then everything else in key order
    ordered = [r for r in report.found if r.candidate in surplus] + [r for r in report.found if r.candidate not in surplus]
    out = _open_out(args.output)
    try:
        if args.format == "jsonl":
            if args.manifest:
                manifest = {"tool": "phieq", "version": __version__, "command": "sweep", "eq": eq.value,
                            "workers": workers, "box": box.describe()}
                out.write(_dump({"manifest": manifest}) + "\n")
            for r in ordered:
                out.write(_dump(r.to_json()) + "\n")
            for u in report.unresolved:
                out.write(_dump({"unresolved": u.to_json()}) + "\n")
            out.write(_dump({"summary": report.summary()}) + "\n")
        else:
            if args.manifest:
                out.write(f"# phieq {__version__} sweep {eq.value} box {box.describe()}\n")
            out.write(f"{'eq':4} {'x':>5} {'y':>5} {'z':>6} {'m':>3} {'n':>3}  {'trivial':7}  family\n")
            for r in ordered:
                c = r.candidate
                z = "-" if c.z is None else str(c.z)
                out.write(f"{c.eq.value:4} {c.x:>5} {c.y:>5} {z:>6} {c.m:>3} {c.n:>3}  {str(r.trivial):7}  {r.family.value}\n")
            for u in report.unresolved:
                out.write(f"unresolved {u.candidate.as_tuple()} cofactor {u.cofactor}\n")
            s = report.summary()
            out.write(
                f"verdict {s['verdict']}: checked {s['checked']} of {s['cardinality']}, unresolved {s['unresolved']},"
                f" found {s['found']} ({s['nontrivial']} nontrivial)\n"
            )
    finally:
        if out is not sys.stdout:
            out.close()
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["eq", "x", "y", "z", "m", "n", "trivial", "family"])
            for r in ordered:
                j = r.to_json()
                w.writerow(["" if j[k] is None else j[k] for k in ("eq", "x", "y", "z", "m", "n", "trivial", "family")])
    return VERDICT_EXIT[report.verdict]


def cmd_verify_lemma(args) -> int:
    if args.lemma_id not in LEMMA_IDS:
        raise UsageError(f"unknown lemma id {args.lemma_id!r}; choose from {', '.join(LEMMA_IDS)}")
    rep = verify_lemma(args.lemma_id)
    out = _open_out(args.output)
    try:
        if args.format == "jsonl":
            out.write(_dump(rep.to_json()) + "\n")
        else:
            out.write(f"{rep.lemma_id}: {'PASS' if rep.passed else 'FAIL'}  {rep.claim}\n{_dump(rep.result)}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK if rep.passed else EXIT_DISCREPANCY


def cmd_bounds(args) -> int:
    if args.bound_id is not None:
        if args.bound_id not in bound_ids():
            raise UsageError(f"unknown bound id {args.bound_id!r}")
        reports = [evaluate_bound(args.bound_id)]
    else:
        section = args.section or "all"
        if section != "all" and section not in SECTIONS:
            raise UsageError(f"unknown section {section!r}")
        reports = chain_audit(section)
    out = _open_out(args.output)
    try:
        for r in reports:
            if args.format == "jsonl":
                out.write(_dump(r.to_json()) + "\n")
            else:
                out.write(
                    f"{'PASS' if r.passed else 'FAIL'}  {r.bound_id:22} {r.computed:>24} {r.relation:2} {r.claimed:<10}"
                    f" margin {r.margin}\n"
                )
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK if all(r.passed for r in reports) else EXIT_DISCREPANCY


COMMANDS = {"sweep": cmd_sweep, "verify-lemma": cmd_verify_lemma, "bounds": cmd_bounds}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        sys.stderr.write(f"phieq: error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
