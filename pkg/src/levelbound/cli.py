"""Subcommand surface: ``python -m levelbound <command> ...``.

Exit codes: 0 success, 1 usage error, 2 input parse error, 3 a ledger
verdict failed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .bounds import bound_report
from .ellcurve.curve import WeierstrassCurve, curve_invariants
from .ellcurve.level import full_level_detect
from .ellcurve.tate import tate_reduction
from .errors import DiscUncertain, LevelBoundError, ParseError
from .intpoly import IntPoly
from .ledger import LedgerOptions, _bad_primes, default_workers, dumps, has_violation, ingest, run_ledger
from .logsum import render
from .numberfield import factor_prime, make_field, rel_log_disc
from .toric import boundary_pullback_multiplicity, refinement_index, sym2_rank

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=1) + "\n")


def cmd_bounds(args) -> int:
    if args.degree < 1:
        raise UsageError("--degree must be positive")
    _emit(bound_report(args.degree).to_json())
    return EXIT_OK


def cmd_field(args) -> int:
    try:
        f = IntPoly.parse(args.poly)
    except ValueError as exc:
        raise ParseError(1, f"bad polynomial {args.poly!r}: {exc}") from None
    K = make_field(f)
    out = {
        "poly": K.serialize(),
        "degree": K.degree,
        "poly_disc": K.poly_disc,
        "field_disc": K.field_disc,
        "disc_bounds": list(K.disc_bounds),
        "certified_primes": {str(p): ok for p, ok in sorted(K.index_certified_primes.items())},
    }
    try:
        out["rel_log_disc"] = rel_log_disc(K).to_json()
    except DiscUncertain:
        out["rel_log_disc"] = None
    if args.prime is not None:
        out["factorization"] = [
            {"p": q.p, "e": q.e, "f": q.f, "kernel_poly": q.kernel_poly.serialize()} for q in factor_prime(K, args.prime)
        ]
    _emit(out)
    return EXIT_OK


def _parse_ainvs(text: str) -> WeierstrassCurve:
    body = text.strip().strip("[]")
    return WeierstrassCurve.parse(f"[{body}]")


def cmd_curve(args) -> int:
    E = _parse_ainvs(args.ainvs)
    disc, c4, c6, j = curve_invariants(E)
    primes = [args.prime] if args.prime is not None else _bad_primes(E)
    out = {
        "ainvs": [str(a) for a in E.ainvs],
        "discriminant": str(disc),
        "c4": str(c4),
        "c6": str(c6),
        "j": str(j),
        "reduction": [tate_reduction(E, p).to_json() for p in primes],
    }
    if args.level is not None:
        out["level"] = full_level_detect(E, args.level).to_json()
    _emit(out)
    return EXIT_OK


def _parse_levels(text: str) -> tuple[int, ...]:
    try:
        return tuple(sorted({int(t) for t in text.split(",") if t.strip()}))
    except ValueError:
        raise UsageError(f"bad --levels {text!r}") from None


def cmd_ledger(args) -> int:
    try:
        eps = Fraction(args.eps)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --eps {args.eps!r}") from None
    if eps <= 0:
        raise UsageError("--eps must be positive")
    levels = _parse_levels(args.levels)
    if any(p not in (2, 3, 5, 7) for p in levels):
        raise UsageError("--levels must be drawn from 2,3,5,7")
    records = ingest(args.input, args.format)
    opts = LedgerOptions(levels=levels, eps=eps, alpha_mode=args.alpha_mode)
    workers = default_workers()
    start = time.perf_counter()
    report = run_ledger(records, opts, workers)
    elapsed = time.perf_counter() - start
    text = dumps(report)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    s = report["summary"]
    print(
        f"{s['records']} curves, {s['pass']} pass, {s['fail']} fail, {s['precondition_unmet']} unmet"
        f" in {elapsed:.2f}s with {workers} worker(s)",
        file=sys.stderr,
    )
    return EXIT_VIOLATION if has_violation(report) else EXIT_OK


def cmd_toric(args) -> int:
    if args.rank < 1 or args.level < 1:
        raise UsageError("--rank and --level must be positive")
    mult, witness = boundary_pullback_multiplicity(args.level, args.rank)
    _emit(
        {
            "rank": args.rank,
            "level": args.level,
            "sym2_rank": sym2_rank(args.rank),
            "refinement_index": refinement_index(args.rank, args.level),
            "boundary_multiplicity": mult,
            "witness": witness.to_json(),
        }
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="levelbound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bounds", help="gamma and the smallest forced prime")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("field", help="number field report")
    p.add_argument("--poly", required=True, help="coefficients low degree first, e.g. 1,0,1")
    p.add_argument("--prime", type=int)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("curve", help="invariants, reduction and level structure")
    p.add_argument("--ainvs", required=True)
    p.add_argument("--prime", type=int)
    p.add_argument("--level", type=int)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("ledger", help="batch verification over a corpus")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("ainvs", "csv"), default="ainvs")
    p.add_argument("--levels", default="2,3,5,7")
    p.add_argument("--eps", default="1")
    p.add_argument("--alpha-mode", choices=("classical", "paper"), default="classical")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_ledger)

    p = sub.add_parser("toric", help="character lattice index and boundary multiplicity")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.set_defaults(func=cmd_toric)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, LevelBoundError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
