"""Command-line entry point.

Exit codes: 0 finished with nothing undecided, 2 finished with undecided
records, 1 bad input or configuration.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional

from ..certify import DEFAULT_MAX_BITS, Verdict
from ..classify import check_p1_p2, is_pisot_polynomial, partition_classes, pseudo_pisot_tuple
from ..errors import ConfigError, PartitionRefused, PrecisionExhausted, SunitLabError
from ..field import evaluate_poly
from ..heights import weil_height
from ..polynomials import IntPolynomial, parse_rational_poly
from . import report
from .config import build_field, load_config
from .mahler import mahler_scan, power_scan
from .search import thm1_search, thm2_verify
from .selftest import run_selftest

EXIT_OK, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for undecided here
    def error(self, message):
        raise UsageError(message)


def _global_flags(parser, suppress: bool):
    # the subcommand copies are suppressed so flags work on either side of it
    def dflt(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--max-bits", type=int, default=dflt(None),
                        help="precision cap for certified comparisons (default 4096)")
    parser.add_argument("--jobs", type=int, default=dflt(1),
                        help="worker processes for search/verify")
    parser.add_argument("--out", default=dflt(None), help="write the report here instead of stdout")
    parser.add_argument("--format", choices=("jsonl", "csv"), default=dflt("jsonl"))
    parser.add_argument("--compare", default=dflt(None), metavar="PREV",
                        help="previous report whose summary to compare against")


def _field_flags(parser):
    parser.add_argument("--field", default="x", metavar="POLY",
                        help="defining polynomial of K (default: Q)")
    parser.add_argument("--galois", action="append", metavar="VEC",
                        help="image of theta as ascending coefficients; repeat per map")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sunitlab", description=__doc__.split("\n\n")[0])
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)

    p = sub.add_parser("height", parents=[common], help="absolute Weil height of an element")
    p.add_argument("element", help='polynomial in t, e.g. "3/2" or "1+t"')
    _field_flags(p)

    p = sub.add_parser("pisot", parents=[common], help="is the polynomial's root a Pisot number")
    p.add_argument("poly")

    for name, text in (("pseudo-pisot", "pseudo-Pisot test for a tuple"),
                       ("classify", "(P1), (P2) and the class partition of a tuple")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("tuple", help='elements separated by ";", e.g. "t; 1-t"')
        _field_flags(p)

    p = sub.add_parser("mahler", parents=[common], help="scan ||alpha^n||")
    p.add_argument("--alpha", required=True, help="k/l, or a polynomial in t with --field")
    p.add_argument("--eps", default="1")
    p.add_argument("--nmax", type=int, default=50)
    _field_flags(p)

    for name, text in (("search", "exceptional-tuple search (mode thm1)"),
                       ("verify", "conclusion verification (mode thm2)")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--config", required=True)

    sub.add_parser("selftest", parents=[common], help="run the built-in invariant checks")
    return parser


# ---------------------------------------------------------------------------


def _field_from(args):
    try:
        poly = IntPolynomial.from_rationals(parse_rational_poly(args.field))
    except ValueError as exc:
        raise ConfigError("--field", str(exc)) from None
    maps = None
    if args.galois:
        maps = tuple(tuple(Fraction(c) for c in g.split(",")) for g in args.galois)
    try:
        return build_field(poly, maps)
    except (SunitLabError, ValueError) as exc:
        raise ConfigError("--galois" if maps else "--field", str(exc)) from None


def _element(field, text: str):
    try:
        coeffs = parse_rational_poly(text)
    except ValueError as exc:
        raise ConfigError("element", str(exc)) from None
    return evaluate_poly(coeffs, field.theta)


def _tuple(field, text: str):
    parts = [s for s in text.split(";") if s.strip()]
    if not parts:
        raise ConfigError("tuple", "empty tuple")
    return [_element(field, s) for s in parts]


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_height(args) -> int:
    field = _field_from(args)
    a = _element(field, args.element)
    h = weil_height(a, 128)
    v = h.value
    if v.is_exact:
        shown = str(v.re.numerator) if v.re.denominator == 1 else str(v.re)
    else:
        d = v.describe(30)
        shown = f"{d['mid']} ± {d['rad']}"
    print(shown)
    print(f"provenance: minimal polynomial {h.source_poly}")
    return EXIT_OK


def cmd_pisot(args) -> int:
    try:
        poly = IntPolynomial.from_rationals(parse_rational_poly(args.poly))
    except ValueError as exc:
        raise ConfigError("poly", str(exc)) from None
    try:
        print("true" if is_pisot_polynomial(poly, args.max_bits) else "false")
    except PrecisionExhausted as exc:
        print(f"undecided ({exc})")
        return EXIT_UNDECIDED
    return EXIT_OK


def cmd_pseudo_pisot(args) -> int:
    field = _field_from(args)
    res = pseudo_pisot_tuple(_tuple(field, args.tuple), args.max_bits)
    print(res.verdict.value)
    if res.witness:
        extra = f" ({res.offender})" if res.offender is not None else ""
        print(f"witness: {res.witness}{extra}")
    print("P = {" + ", ".join(str(b) for b in res.P) + "}")
    if res.total is not None:
        print(f"sum = {res.total}")
    return EXIT_UNDECIDED if res.verdict is Verdict.UNDECIDED else EXIT_OK


def cmd_classify(args) -> int:
    field = _field_from(args)
    betas = _tuple(field, args.tuple)
    res = check_p1_p2(betas)
    print(f"P1: {str(res.p1).lower()}" + (f"  witness {res.p1_witness[0]}, {res.p1_witness[1]}"
                                          if res.p1_witness else ""))
    print(f"P2: {str(res.p2).lower()}" + (f"  witness {res.p2_witness}" if res.p2_witness else ""))
    try:
        part = partition_classes(betas)
    except PartitionRefused as exc:
        print(f"partition: refused ({exc})")
        return EXIT_OK
    print(f"classes: {[list(c) for c in part.classes]}")
    print(f"h = {part.h}, e = {list(part.e)}, d = {list(part.d_counts)}")
    return EXIT_OK


def cmd_mahler(args) -> int:
    if args.field != "x":
        field = _field_from(args)
        a = _element(field, args.alpha)
        rows = power_scan(a, args.nmax, max_bits=args.max_bits)
        head = report.header("power-scan", max_bits=args.max_bits)
        summary = {"mode": "power-scan", "alpha": str(a), "field": str(field.defining_poly),
                   "nmax": args.nmax, "rows": len(rows)}
        _emit(args, report.render(args.format, head, [r.as_dict() for r in rows], summary))
        return EXIT_OK
    try:
        alpha, eps = Fraction(args.alpha), Fraction(args.eps)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError("--alpha/--eps", str(exc)) from None
    rep = mahler_scan(alpha, eps, args.nmax)
    head = report.header("mahler")
    text = report.render(args.format, head, [r.as_dict() for r in rep.rows], rep.summary())
    _emit(args, text)
    if args.out:
        q = "{" + ", ".join(map(str, rep.qualifying)) + "}" if rep.qualifying else "∅"
        print(f"qualifying set: {q}; equality boundaries: {list(rep.boundaries)}; "
              f"{len(rep.rows)} trajectory rows")
    return EXIT_OK


def _run_search(args, mode: str) -> int:
    cfg = load_config(args.config, args.max_bits)
    if cfg.mode != mode:
        raise ConfigError("mode", f"this command needs mode = {mode}, config has {cfg.mode}")
    previous = report.read_summary(args.compare) if args.compare else None
    if mode == "thm1":
        records, summary = thm1_search(cfg, jobs=args.jobs, previous=previous)
    else:
        records, summary = thm2_verify(cfg, jobs=args.jobs)
    head = report.header(mode, cfg.raw, cfg.max_bits)
    _emit(args, report.render(args.format, head, records, summary))
    if args.out:
        brief = {k: v for k, v in summary.items() if not k.endswith("_set")}
        print(report._dumps(brief))
    return EXIT_UNDECIDED if summary["undecided"] else EXIT_OK


def cmd_selftest(args) -> int:
    return EXIT_OK if run_selftest() else EXIT_INPUT


COMMANDS = {
    "height": cmd_height,
    "pisot": cmd_pisot,
    "pseudo-pisot": cmd_pseudo_pisot,
    "classify": cmd_classify,
    "mahler": cmd_mahler,
    "search": lambda a: _run_search(a, "thm1"),
    "verify": lambda a: _run_search(a, "thm2"),
    "selftest": cmd_selftest,
}


def run_cli(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_INPUT
    explicit_bits = args.max_bits is not None
    if not explicit_bits:
        args.max_bits = DEFAULT_MAX_BITS
    if args.max_bits < 64:
        print("error: --max-bits: must be at least 64", file=sys.stderr)
        return EXIT_INPUT
    if args.jobs < 1:
        print("error: --jobs: must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    if args.command in ("search", "verify") and not explicit_bits:
        args.max_bits = None  # let precision.max_bits in the config decide
    try:
        return COMMANDS[args.command](args)
    except (SunitLabError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
