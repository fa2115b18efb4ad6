"""Explicit constants and the inequality checks built on them.

``gamma(d) = (1 + 2^(d/2))^2`` bounds the order of a torsion point that
survives reduction at a prime of residue size at most ``2^d``.  Every check
returns a :class:`Verdict` whose status is decided exactly: log-scale sides
are :class:`LogSum` values and the constants are quadratic surds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import nextprime

from .errors import DiscUncertain, FieldTooLarge
from .heights import truncated_counting
from .intpoly import IntPoly
from .logsum import LogSum, factor, render, valuation
from .numberfield import RATIONALS, NumberField, make_field, quadratic_field, rel_log_disc

PAPER_LEVEL = 12
PAPER_M = 4608  # |GL_2(Z/12)| = 96 * 48
MAX_PROXY_DEGREE = 12


# -- exact quadratic surds ----------------------------------------------------


def _squarefree_split(n: int) -> tuple[int, int]:
    """``n = s^2 c`` with c squarefree; returns (s, c)."""
    s, c = 1, 1
    for p, e in factor(n).items():
        s *= p ** (e // 2)
        c *= p ** (e % 2)
    return s, c


@dataclass(frozen=True)
class Surd:
    """``a + b sqrt(c)`` with rational a, b and squarefree c >= 1."""

    a: Fraction
    b: Fraction = Fraction(0)
    c: int = 1

    def __post_init__(self):
        a, b, c = Fraction(self.a), Fraction(self.b), self.c
        if c == 1 or b == 0:
            a, b, c = a + b, Fraction(0), 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @classmethod
    def sqrt(cls, n: int) -> "Surd":
        s, c = _squarefree_split(n)
        return cls(Fraction(0), Fraction(s), c)

    def __add__(self, other):
        other = _as_surd(other)
        if other.b and self.b and other.c != self.c:
            raise ValueError("surds with different radicands")
        c = self.c if self.b else other.c
        return Surd(self.a + other.a, self.b + other.b, c)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.c)

    def __sub__(self, other):
        return self + (-_as_surd(other))

    def __rsub__(self, other):
        return _as_surd(other) - self

    def __mul__(self, other):
        other = _as_surd(other)
        if other.b and self.b and other.c != self.c:
            raise ValueError("surds with different radicands")
        c = self.c if self.b else other.c
        return Surd(self.a * other.a + self.b * other.b * c, self.a * other.b + self.b * other.a, c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Surd(Fraction(1))
        for _ in range(n):
            out = out * self
        return out

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or sa == sb:
            return sa or sb
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with b^2 c
        d = self.a * self.a - self.b * self.b * self.c
        return sa if d > 0 else (sb if d < 0 else 0)

    def __eq__(self, other):
        try:
            return (self - _as_surd(other)).sign() == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.c)

    def floor(self) -> int:
        n = math.floor(float(self))
        while Surd(Fraction(n)) > self:
            n -= 1
        while Surd(Fraction(n + 1)) <= self:
            n += 1
        return n

    def __str__(self):
        if not self.b:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.c})"


def _as_surd(x) -> Surd:
    if isinstance(x, Surd):
        return x
    if isinstance(x, (int, Fraction)):
        return Surd(Fraction(x))
    raise TypeError(f"cannot use {type(x).__name__} as a surd")


# -- constants ------------------------------------------------------------------


def torsion_reduction_bound(residue_size: int) -> Surd:
    """``(1 + sqrt(Nq))^2``: the Hasse bound on ``#E(F_q)`` and hence on torsion."""
    if residue_size < 2:
        raise ValueError("residue field size must be at least 2")
    return (1 + Surd.sqrt(residue_size)) ** 2


def gamma(d: int) -> Surd:
    """``(1 + 2^(d/2))^2``."""
    if d < 1:
        raise ValueError("field degree must be positive")
    return torsion_reduction_bound(2**d)


def min_forced_prime(d: int) -> int:
    """Smallest prime strictly above gamma(d)."""
    return int(nextprime(gamma(d).floor()))


def beta(degree: int) -> int:
    return 1 + degree


@dataclass(frozen=True)
class BoundParameters:
    field_degree: int = 1
    g: int = 1
    M: int = 1
    a_max: int = 1

    @classmethod
    def for_mode(cls, mode: str, field_degree: int = 1) -> "BoundParameters":
        if mode == "classical":
            return cls(field_degree, 1, 1, 1)
        if mode == "paper":
            return cls(field_degree, 1, PAPER_M, 1)
        raise ValueError(f"unknown alpha mode {mode!r}")

    @property
    def alpha(self) -> Fraction:
        return Fraction(1, self.M * self.a_max)

    @property
    def mode(self) -> str:
        return "classical" if self.M == 1 else "paper"

    def to_json(self) -> dict:
        return {"d": self.field_degree, "g": self.g, "M": self.M, "a_max": self.a_max, "alpha": str(self.alpha)}


CLASSICAL = BoundParameters()


@dataclass(frozen=True)
class BoundReport:
    degree: int
    gamma: Surd
    min_forced_prime: int
    beta: int

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "gamma": render(self.gamma),
            "gamma_exact": str(self.gamma),
            "min_forced_prime": self.min_forced_prime,
            "beta": self.beta,
        }


def bound_report(d: int) -> BoundReport:
    """Constants for base fields of degree d (beta for a degree-1 torsion proxy)."""
    return BoundReport(d, gamma(d), min_forced_prime(d), beta(1))


# -- verdicts -------------------------------------------------------------------

PASS, FAIL, UNMET = "pass", "fail", "precondition_unmet"


def _sign(x) -> int:
    if isinstance(x, (LogSum, Surd)):
        return x.sign()
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class Verdict:
    """A named inequality ``lhs <= rhs`` (or ``>=``) with exact slack."""

    name: str
    lhs: object
    rhs: object
    slack: object
    status: str
    notes: str = ""
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "lhs": _render(self.lhs),
            "rhs": _render(self.rhs),
            "slack": _render(self.slack),
            "status": self.status,
            "notes": self.notes,
        }
        out.update(self.extra)
        return out


def _render(x):
    if x is None:
        return None
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    return render(x)


def _le(name, lhs, rhs, notes="", **extra) -> Verdict:
    slack = rhs - lhs
    return Verdict(name, lhs, rhs, slack, PASS if _sign(slack) >= 0 else FAIL, notes, extra)


def _ge(name, lhs, rhs, notes="", **extra) -> Verdict:
    slack = lhs - rhs
    return Verdict(name, lhs, rhs, slack, PASS if _sign(slack) >= 0 else FAIL, notes, extra)


def unmet(name: str, notes: str) -> Verdict:
    return Verdict(name, None, None, None, UNMET, notes)


# -- checks -----------------------------------------------------------------------


def neukirch_check(K: NumberField, p: int) -> Verdict:
    """``v_p(|Disc|) <= n (1 + n)`` for a field of degree n."""
    if not K.disc_certified:
        raise DiscUncertain(f"discriminant of {K} is not certified", K.disc_bounds)
    n = K.degree
    v = valuation(abs(K.field_disc), p)
    return _le("neukirch", v, n * (1 + n), f"v_{p}(|Disc|) for degree {n}")


def _two_multiplicity(j) -> int:
    j = Fraction(j)
    return max(0, -valuation(j, 2)) if j else 0


def epsm_multiplicity_check(n2: int, p: int, eps=Fraction(1), alpha=Fraction(1), d: int = 1) -> Verdict:
    """``eps * n_2 log 2 >= eps * alpha * p log 2`` from the multiplicity at 2.

    Over Q there is a single prime above 2 with residue field F_2.
    """
    eps, alpha = Fraction(eps), Fraction(alpha)
    if _sign(gamma(d) - p) >= 0:
        return unmet("epsm", f"p = {p} <= gamma({d}) = {render(gamma(d))}: bad reduction at 2 is not forced")
    log2 = LogSum.log_prime(2)
    lhs = log2 * (eps * n2)
    rhs = log2 * (eps * alpha * p)
    unconditional = log2 * n2 - log2 * p
    return _ge(
        "epsm",
        lhs,
        rhs,
        f"unconditional form n_2 log 2 - p log 2 = {unconditional}",
        unconditional_slack=render(unconditional),
    )


def epsm_check(E, p: int, eps=Fraction(1), params: BoundParameters = CLASSICAL, report=None) -> Verdict:
    """Height growth at the primes over 2 for a curve with full level p."""
    from .ellcurve.level import full_level_detect

    report = report or full_level_detect(E, p)
    if not report.full_level:
        return unmet("epsm", f"no full level-{p} structure")
    return epsm_multiplicity_check(_two_multiplicity(E.j_invariant), p, eps, params.alpha, params.field_degree)


def truncated_lemma_check(E, p: int, eps=Fraction(1), params: BoundParameters = CLASSICAL, report=None) -> Verdict:
    """``p * alpha * N1 <= finite part of h(j)``."""
    from .ellcurve.level import full_level_detect

    report = report or full_level_detect(E, p)
    if not report.full_level:
        return unmet("truncated_lemma", f"no full level-{p} structure")
    eps = Fraction(eps)
    b = truncated_counting(E.j_invariant)
    lhs = b.truncated * (p * params.alpha)
    threshold = 1 / (eps * params.alpha)
    if p > threshold:
        note = f"p > 1/(eps*alpha) = {threshold}, so N1 <= eps * h_D"
    else:
        note = f"p <= 1/(eps*alpha) = {threshold}; only the multiplicity form is asserted"
    return _le("truncated_lemma", lhs, b.finite_part, note)


def divisibility_check(E, p: int, report=None) -> Verdict:
    """``p | -v_q(j)`` at every prime with ``v_q(j) < 0``; lhs sums the residues."""
    from .ellcurve.level import full_level_detect

    report = report or full_level_detect(E, p)
    if not report.full_level:
        return unmet("divisibility", f"no full level-{p} structure")
    b = truncated_counting(E.j_invariant)
    residues = {c.prime_factor.p: int(c.n_q) % p for c in b.cusp_contributions}
    bad = sorted(q for q, r in residues.items() if r)
    note = "n_q divisible by p at every cusp prime" if not bad else f"not divisible at {bad}"
    return _le("divisibility", sum(residues.values()), 0, note)


def dichotomy_check(E, p: int, report=None) -> Verdict:
    """``p <= gamma(1)`` or bad reduction at 2."""
    from .ellcurve.level import full_level_detect
    from .ellcurve.tate import tate_reduction

    report = report or full_level_detect(E, p)
    if not report.full_level:
        return unmet("dichotomy", f"no full level-{p} structure")
    g = gamma(1)
    bad_at_2 = not tate_reduction(E, 2).is_good
    slack = g - p
    if _sign(slack) >= 0:
        return Verdict("dichotomy", p, g, slack, PASS, "p <= gamma(1)")
    status = PASS if bad_at_2 else FAIL
    return Verdict("dichotomy", p, g, slack, status, "bad reduction at 2" if bad_at_2 else "good reduction at 2")


def _kernel_field(g: IntPoly) -> NumberField:
    """The number field generated by a root of an irreducible integer polynomial."""
    n = g.degree
    if n == 1:
        return RATIONALS
    if n == 2:
        c, b, a = g.coeffs
        s, d = _squarefree_split(abs(b * b - 4 * a * c))
        return quadratic_field(d if b * b - 4 * a * c > 0 else -d)
    if n > MAX_PROXY_DEGREE:
        raise FieldTooLarge(f"proxy field of degree {n} exceeds {MAX_PROXY_DEGREE}")
    # a root of g times its leading coefficient is integral
    lc = g.lc
    monic = IntPoly(c * lc ** (n - 1 - i) for i, c in enumerate(g.coeffs[:-1])) + IntPoly((0,) * n + (1,))
    return make_field(monic)


def _proxy_verdict(name: str, g: IntPoly, p: int) -> Verdict:
    K = _kernel_field(g)
    rhs = LogSum.log_prime(p, beta(K.degree))
    if not K.disc_certified:
        raise DiscUncertain(f"proxy field {K} is not certified", K.disc_bounds)
    d = rel_log_disc(K).total
    return _le(name, d, rhs, f"proxy_lower_bound via {K}", proxy_field=K.serialize(), proxy_degree=K.degree)


def disc_growth_check(E, p: int, report=None) -> list[Verdict]:
    """``d_Q(field) <= beta log p`` for x-coordinate fields of the two summands of E[p].

    The fields are sub-extensions of the p-division field, so each value is a
    lower-bound proxy for the discriminant term of the full torsion field.
    """
    from .ellcurve.level import full_level_detect

    report = report or full_level_detect(E, p)
    if not report.full_level:
        return [unmet("disc_growth", f"no full level-{p} structure")]
    P = report.point
    xp = Fraction(P.x)
    out = [_proxy_verdict("disc_growth_point", IntPoly((-xp.numerator, xp.denominator)), p)]
    facs = [g for g, _ in report.mu_kernel.factor_over_z()[1]]
    g = max(facs, key=lambda h: (h.degree, h.coeffs))
    out.append(_proxy_verdict("disc_growth_mu", g, p))
    return out
