"""Corpus ingestion and the per-curve verification ledger.

Each record is processed independently; the batch fans out over worker
processes and is merged back in input order, so the JSON report is
byte-identical for any worker count.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from sympy import primerange

from . import __version__
from .bounds import (
    CLASSICAL,
    PASS,
    FAIL,
    UNMET,
    BoundParameters,
    Verdict,
    _ge,
    _le,
    dichotomy_check,
    disc_growth_check,
    divisibility_check,
    epsm_check,
    torsion_reduction_bound,
    truncated_lemma_check,
)
from .ellcurve.counting import count_points_mod_p
from .ellcurve.curve import WeierstrassCurve
from .ellcurve.level import full_level_detect
from .ellcurve.tate import tate_reduction
from .ellcurve.torsion import rational_torsion
from .errors import DuplicateLabel, LevelBoundError, ParseError
from .heights import DEFAULT_PRIME_BOUND, counting_height_check, truncated_counting
from .logsum import factor, render

SUPPORTED_LEVELS = (2, 3, 5, 7)
HASSE_LIMIT = 200


@dataclass(frozen=True)
class CurveRecord:
    label: str
    ainvs: tuple[Fraction, ...]
    base: str = "Q"
    line: int = 0

    def curve(self) -> WeierstrassCurve:
        return WeierstrassCurve.from_ainvs(self.ainvs, label=self.label)

    def serialize(self) -> str:
        return f"{self.label}: " + ",".join(str(a) for a in self.ainvs)


class IngestErrors(ParseError):
    """Several malformed lines; ``errors`` holds each one."""

    def __init__(self, errors: list[ParseError]):
        self.errors = errors
        super().__init__(errors[0].line, "; ".join(str(e) for e in errors))


def _record(label: str, fields: list[str], lineno: int) -> CurveRecord:
    label = label.strip()
    if not label:
        raise ParseError(lineno, "missing label")
    if len(fields) != 5:
        raise ParseError(lineno, f"expected 5 a-invariants, got {len(fields)}")
    try:
        ainvs = tuple(Fraction(f.strip()) for f in fields)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(lineno, str(exc)) from None
    rec = CurveRecord(label, ainvs, "Q", lineno)
    try:
        rec.curve()
    except LevelBoundError as exc:
        raise ParseError(lineno, str(exc)) from None
    return rec


def _ainvs_rows(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            yield lineno, None, ParseError(lineno, "expected 'label: a1,a2,a3,a4,a6'")
            continue
        label, body = line.split(":", 1)
        body = body.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        yield lineno, (label, body.split(",")), None


def _csv_rows(text: str):
    reader = csv.reader(io.StringIO(text))
    header = None
    for row in reader:
        lineno = reader.line_num
        if not row or not "".join(row).strip():
            continue
        if header is None:
            header = [h.strip() for h in row]
            if header != ["label", "a1", "a2", "a3", "a4", "a6"]:
                yield lineno, None, ParseError(lineno, "header must be label,a1,a2,a3,a4,a6")
                return
            continue
        yield lineno, (row[0], row[1:]), None


def parse_records(text: str, fmt: str = "ainvs") -> list[CurveRecord]:
    if fmt == "ainvs":
        rows = _ainvs_rows(text)
    elif fmt == "csv":
        rows = _csv_rows(text)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    records, errors, seen = [], [], {}
    for lineno, row, err in rows:
        if err is not None:
            errors.append(err)
            continue
        try:
            rec = _record(row[0], row[1], lineno)
        except ParseError as exc:
            errors.append(exc)
            continue
        if rec.label in seen:
            raise DuplicateLabel(rec.label, lineno)
        seen[rec.label] = lineno
        records.append(rec)
    if len(errors) == 1:
        raise errors[0]
    if errors:
        raise IngestErrors(errors)
    return records


def ingest(path, fmt: str = "ainvs") -> list[CurveRecord]:
    """Read a corpus file in ``ainvs`` or ``csv`` format."""
    return parse_records(Path(path).read_text(), fmt)


def bundled_corpus_path():
    return resources.files("levelbound") / "data" / "corpus50.txt"


def bundled_corpus() -> list[CurveRecord]:
    return parse_records(bundled_corpus_path().read_text(), "ainvs")


# -- per-record analysis ----------------------------------------------------------


@dataclass(frozen=True)
class LedgerOptions:
    levels: tuple[int, ...] = SUPPORTED_LEVELS
    eps: Fraction = Fraction(1)
    alpha_mode: str = "classical"
    prime_bound: int = DEFAULT_PRIME_BOUND
    hasse_limit: int = HASSE_LIMIT

    @property
    def params(self) -> BoundParameters:
        return BoundParameters.for_mode(self.alpha_mode)

    def to_json(self) -> dict:
        return {
            "levels": list(self.levels),
            "eps": str(self.eps),
            "alpha_mode": self.alpha_mode,
            "alpha": str(self.params.alpha),
            "prime_bound": self.prime_bound,
            "hasse_limit": self.hasse_limit,
        }


def _bad_primes(E: WeierstrassCurve) -> list[int]:
    return sorted(factor(abs(Fraction(E.integral_model().discriminant).numerator)))


def _hasse_and_injection(E, reductions, torsion_order: int, limit: int) -> list[Verdict]:
    bad = {p for p, r in reductions.items() if not r.is_good}
    worst = Fraction(0)
    misses = []
    checked = 0
    for p in primerange(2, limit):
        p = int(p)
        if p in bad:
            continue
        n = count_points_mod_p(E, p)
        a = p + 1 - n
        worst = max(worst, Fraction(a * a, 4 * p))
        if torsion_order % p and n % torsion_order:
            misses.append(p)
        checked += 1
    return [
        _le("hasse", worst, 1, f"max a_p^2/(4p) over {checked} good primes < {limit}"),
        _le(
            "torsion_injection",
            len(misses),
            0,
            f"#E(tors) = {torsion_order} divides #E(F_p) at good p not dividing it"
            + (f"; fails at {misses}" if misses else ""),
        ),
    ]


def _torsion_reduction_verdict(E, p: int, reductions) -> Verdict:
    """A point of order p survives reduction at the smallest good prime q != p."""
    q = next(int(q) for q in primerange(2, 10**4) if q != p and (q not in reductions or reductions[q].is_good))
    n = count_points_mod_p(E, q)
    return _le(
        "torsion_reduction",
        p,
        torsion_reduction_bound(q),
        f"p <= #E(F_{q}) = {n} <= (1+sqrt({q}))^2",
        q=q,
        points_mod_q=n,
    )


def _level_section(E, p: int, opts: LedgerOptions, reductions) -> dict:
    report = full_level_detect(E, p)
    out = {"report": report.to_json(), "verdicts": []}
    if not report.full_level:
        return out
    params = opts.params
    verdicts = [
        divisibility_check(E, p, report),
        dichotomy_check(E, p, report),
        epsm_check(E, p, opts.eps, params, report),
        truncated_lemma_check(E, p, opts.eps, params, report),
        *disc_growth_check(E, p, report),
        _torsion_reduction_verdict(E, p, reductions),
    ]
    out["verdicts"] = [v.to_json() for v in verdicts]
    return out


def analyse_record(rec: CurveRecord, opts: LedgerOptions) -> dict:
    """All ledger entries for one curve; errors are captured, not raised."""
    out: dict = {"label": rec.label, "ainvs": [str(a) for a in rec.ainvs]}
    try:
        E = rec.curve()
        j = E.j_invariant
        out["j"] = str(j)
        b = truncated_counting(j, prime_bound=opts.prime_bound)
        out["height"] = b.to_json()
        chain = counting_height_check(b)
        reductions = {p: tate_reduction(E, p) for p in _bad_primes(E)}
        out["reduction"] = [r.to_json() for r in reductions.values()]
        out["conductor"] = math.prod(p ** r.conductor_exponent for p, r in reductions.items())
        tors = rational_torsion(E)
        out["torsion"] = tors.to_json()
        verdicts = [
            _le("counting_lower", b.truncated, b.weighted_count, "N1 <= sum n_q log|kappa(q)|"),
            _ge("counting_upper", chain.height, b.weighted_count, "sum n_q log|kappa(q)| <= h(j)"),
            *_hasse_and_injection(E, reductions, tors.order, opts.hasse_limit),
        ]
        out["verdicts"] = [v.to_json() for v in verdicts]
        out["levels"] = {str(p): _level_section(E, p, opts, reductions) for p in opts.levels}
    except LevelBoundError as exc:
        out["error"] = {"type": type(exc).__name__, "message": str(exc)}
    return out


def _analyse(args):
    return analyse_record(*args)


def default_workers() -> int:
    env = os.environ.get("LEVELBOUND_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _summary(entries: list[dict], levels) -> dict:
    counts = {PASS: 0, FAIL: 0, UNMET: 0}
    detections = {str(p): [] for p in levels}
    errors = 0

    def tally(vs):
        for v in vs:
            counts[v["status"]] += 1

    for e in entries:
        if "error" in e:
            errors += 1
            continue
        tally(e["verdicts"])
        for p, sec in e["levels"].items():
            tally(sec["verdicts"])
            if sec["report"]["full_level"]:
                detections[p].append(e["label"])
    return {
        "records": len(entries),
        "errors": errors,
        "pass": counts[PASS],
        "fail": counts[FAIL],
        "precondition_unmet": counts[UNMET],
        "full_level": detections,
    }


def run_ledger(records, opts: LedgerOptions | None = None, workers: int | None = None) -> dict:
    """The assembled report; order follows ``records``."""
    opts = opts or LedgerOptions()
    bad = [p for p in opts.levels if p not in SUPPORTED_LEVELS]
    if bad:
        raise ValueError(f"levels must be drawn from {SUPPORTED_LEVELS}, got {bad}")
    workers = default_workers() if workers is None else workers
    jobs = [(rec, opts) for rec in records]
    if workers <= 1 or len(jobs) <= 1:
        entries = [_analyse(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(_analyse, jobs))
    return {
        "metadata": {"tool": "levelbound", "version": __version__, "parameters": opts.to_json()},
        "curves": entries,
        "summary": _summary(entries, opts.levels),
    }


def dumps(report: dict) -> str:
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"


def has_violation(report: dict) -> bool:
    return report["summary"]["fail"] > 0
