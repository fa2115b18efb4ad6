"""Exact log-scale quantities.

Every discriminant, height and counting-function value over Q (and the
finite parts over quadratic fields) is a finite sum ``sum c_p log p`` with
rational coefficients ``c_p`` over rational primes ``p``.  Because the
logarithms of distinct primes are linearly independent over Q, such a sum
has a canonical form, so equality is a dictionary comparison and ordering
reduces to comparing two integers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Mapping

from sympy import factorint


def valuation(n, p: int) -> int | float:
    """p-adic valuation of an integer or Fraction; ``math.inf`` for zero."""
    if n == 0:
        return math.inf
    n = Fraction(n)
    return _vint(n.numerator, p) - _vint(n.denominator, p)


def _vint(n: int, p: int) -> int:
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def factor(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` (trial division + Pollard rho via sympy)."""
    n = abs(int(n))
    if n <= 1:
        return {}
    return {int(p): int(e) for p, e in factorint(n).items()}


class LogSum:
    """Immutable ``sum c_p log p`` with Fraction coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Fraction | int] | None = None):
        clean = {}
        for p, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                clean[int(p)] = c
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def log(cls, q) -> "LogSum":
        """``log |q|`` for a nonzero integer or Fraction."""
        q = Fraction(q)
        if q == 0:
            raise ValueError("log of zero")
        terms = dict(factor(q.numerator))
        for p, e in factor(q.denominator).items():
            terms[p] = terms.get(p, 0) - e
        return cls(terms)

    @classmethod
    def log_prime(cls, p: int, coeff=1) -> "LogSum":
        return cls({p: coeff})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def coeff(self, p: int) -> Fraction:
        return self._terms.get(p, Fraction(0))

    def primes(self) -> list[int]:
        return list(self._terms)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, LogSum):
            return NotImplemented
        terms = dict(self._terms)
        for p, c in other._terms.items():
            terms[p] = terms.get(p, 0) + c
        return LogSum(terms)

    __radd__ = __add__

    def __neg__(self):
        return LogSum({p: -c for p, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LogSum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k):
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        return LogSum({p: c * k for p, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, k):
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        return self * (1 / Fraction(k))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, LogSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def sign(self) -> int:
        """Exact sign: compares ``prod p^(L c_p)`` over positive and negative c_p."""
        if not self._terms:
            return 0
        lcm = reduce(math.lcm, (c.denominator for c in self._terms.values()), 1)
        pos, neg = 1, 1
        for p, c in self._terms.items():
            e = c * lcm
            if e > 0:
                pos *= p ** int(e)
            else:
                neg *= p ** int(-e)
        return (pos > neg) - (pos < neg)

    def __lt__(self, other):
        return (self - _as_logsum(other)).sign() < 0

    def __le__(self, other):
        return (self - _as_logsum(other)).sign() <= 0

    def __gt__(self, other):
        return (self - _as_logsum(other)).sign() > 0

    def __ge__(self, other):
        return (self - _as_logsum(other)).sign() >= 0

    def __float__(self):
        return math.fsum(float(c) * math.log(p) for p, c in self._terms.items())

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LogSum({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for p, c in self._terms.items():
            if c == 1:
                parts.append(f"log({p})")
            elif c == -1:
                parts.append(f"-log({p})")
            else:
                parts.append(f"{c}*log({p})")
        return " + ".join(parts).replace("+ -", "- ")


ZERO = LogSum()


def _as_logsum(x) -> LogSum:
    if isinstance(x, LogSum):
        return x
    if x == 0:
        return ZERO
    raise TypeError(f"cannot compare LogSum with {type(x).__name__}")


def render(x) -> float:
    """Float rendering with 12 significant digits, used at report boundaries."""
    return float(f"{float(x):.12g}")
