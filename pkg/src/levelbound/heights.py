"""Weil heights on the j-line and the cusp counting functions.

The boundary divisor is the cusp at infinity of P^1.  A point ``j`` meets it
at a finite prime q with multiplicity ``max(0, -v_q(j))``, so the finite
part of the logarithmic height is exactly the weighted count
``(1/[K:Q]) sum n_q log|kappa(q)|`` and the counting-height chain holds with
no bounded error term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DenominatorPrimeTooLarge, UnsupportedDegree
from .logsum import LogSum, factor, render
from .numberfield import (
    RATIONALS,
    NFElement,
    NumberField,
    PrimeIdealFactor,
    as_element,
    element_valuation,
    factor_prime,
)

DEFAULT_PRIME_BOUND = 10**6


@dataclass(frozen=True)
class LocalContribution:
    prime_factor: PrimeIdealFactor
    n_q: Fraction

    @property
    def log_residue(self) -> LogSum:
        return self.prime_factor.log_residue

    def to_json(self) -> dict:
        q = self.prime_factor
        n = self.n_q
        return {"p": q.p, "e": q.e, "f": q.f, "n": int(n) if n.denominator == 1 else str(n)}


@dataclass(frozen=True)
class HeightBreakdown:
    point: object
    degree: int
    finite_part: LogSum
    archimedean_part: LogSum | float
    weighted_count: LogSum
    truncated: LogSum
    cusp_contributions: tuple = field(default=())

    @property
    def height(self) -> LogSum | float:
        if isinstance(self.archimedean_part, LogSum):
            return self.finite_part + self.archimedean_part
        return float(self.finite_part) + self.archimedean_part

    @property
    def exact(self) -> bool:
        return isinstance(self.archimedean_part, LogSum)

    def to_json(self) -> dict:
        return {
            "height": render(self.height),
            "finite_part": render(self.finite_part),
            "archimedean_part": render(self.archimedean_part),
            "N1": render(self.truncated),
            "contributions": [c.to_json() for c in self.cusp_contributions],
        }


def _split_denominator(x: NFElement) -> int:
    return math.lcm(*(c.denominator for c in x.coeffs))


def archimedean_height(j, K: NumberField = RATIONALS) -> LogSum | float:
    """``(1/[K:Q]) sum_v n_v log max(1, |j|_v)`` over infinite places."""
    x = as_element(K, j)
    if x.is_rational():
        q = x.coeffs[0]
        if abs(q) <= 1:
            return LogSum()
        return LogSum.log(q)
    if K.degree > 2:
        raise UnsupportedDegree("heights are only supported up to degree 2")
    # each complex root of f is one embedding; a complex place is counted twice
    total = math.fsum(math.log(max(1.0, abs(z))) for z in x.conjugates())
    return total / K.degree


def cusp_multiplicity(j, q: PrimeIdealFactor, K: NumberField = RATIONALS) -> int:
    """Intersection multiplicity of j with the cusp at q: ``max(0, -v_q(j))``."""
    x = as_element(K, j)
    if x.is_zero():
        return 0
    return max(0, -element_valuation(K, x, q))


def scaled_multiplicity(n: int, e: int) -> Fraction:
    """Multiplicity seen over an extension with ramification e, brought back down."""
    if n < 0 or e < 1:
        raise ValueError("need n >= 0 and e >= 1")
    return Fraction(n, e)


def _bad_primes(x: NFElement, K: NumberField, prime_bound: int) -> list[int]:
    den = _split_denominator(x)
    primes = sorted(factor(den))
    for p in primes:
        if p > prime_bound:
            raise DenominatorPrimeTooLarge(p, prime_bound)
    return primes


def truncated_counting(j, K: NumberField = RATIONALS, prime_bound: int = DEFAULT_PRIME_BOUND) -> HeightBreakdown:
    """Height of j split into cusp contributions, with the truncated count N^(1)."""
    x = as_element(K, j)
    if K.degree > 2 and not x.is_rational():
        raise UnsupportedDegree("heights are only supported up to degree 2")
    contributions = []
    weighted = LogSum()
    truncated = LogSum()
    if not x.is_zero():
        for p in _bad_primes(x, K, prime_bound):
            for q in factor_prime(K, p):
                n = cusp_multiplicity(x, q, K)
                if n > 0:
                    contributions.append(LocalContribution(q, Fraction(n)))
                    weighted = weighted + q.log_residue * n
                    truncated = truncated + q.log_residue
    d = K.degree
    weighted = weighted / d
    truncated = truncated / d
    return HeightBreakdown(
        point=x,
        degree=d,
        finite_part=weighted,
        archimedean_part=archimedean_height(x, K),
        weighted_count=weighted,
        truncated=truncated,
        cusp_contributions=tuple(contributions),
    )


def abs_log_height(j, K: NumberField = RATIONALS) -> LogSum | float:
    """Absolute logarithmic Weil height; exact LogSum when j is rational."""
    return truncated_counting(j, K, prime_bound=math.inf).height


@dataclass(frozen=True)
class ChainVerdict:
    truncated: LogSum
    weighted: LogSum
    height: LogSum | float
    lower_slack: LogSum
    upper_slack: LogSum | float

    @property
    def holds(self) -> bool:
        upper_ok = self.upper_slack >= 0 if isinstance(self.upper_slack, LogSum) else self.upper_slack >= -1e-9
        return self.lower_slack >= 0 and upper_ok


def counting_height_check(b: HeightBreakdown) -> ChainVerdict:
    """``N1 <= (1/[K:Q]) sum n_q log|kappa(q)| <= h`` with both slacks."""
    upper = b.height - b.weighted_count if b.exact else b.height - float(b.weighted_count)
    return ChainVerdict(b.truncated, b.weighted_count, b.height, b.weighted_count - b.truncated, upper)
