"""Number fields Q[x]/(f) of small degree.

Fields are monogenic presentations: ``Z[theta]`` is tested for maximality
one prime at a time with Dedekind's criterion, and primes are factored by
Kummer-Dedekind.  Anything that needs the true ring of integers at a prime
where Dedekind's criterion fails raises instead of guessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DegreeMismatch,
    DegreeUnsupported,
    DiscUncertain,
    IndexDivisor,
    NotMonic,
    Reducible,
    UnsupportedDegree,
)
from .intpoly import IntPoly, gcd_mod_p, poly_divmod_mod_p
from .logsum import LogSum, factor, valuation

MAX_DEGREE = 8


def dedekind_maximal(f: IntPoly, p: int) -> bool:
    """Dedekind's criterion: is Z[x]/(f) maximal at p?"""
    facs = f.factor_mod(p)
    g = IntPoly((1,))
    h = IntPoly((1,))
    for gi, e in facs:
        g = g * gi
        h = h * gi ** (e - 1)
    rem = f - g * h
    assert all(c % p == 0 for c in rem.coeffs)
    big_f = IntPoly(c // p for c in rem.coeffs)
    t = gcd_mod_p(gcd_mod_p(big_f, g, p), h, p)
    return t.degree == 0


@dataclass(frozen=True)
class NumberField:
    defining_poly: IntPoly
    degree: int
    poly_disc: int
    index_certified_primes: dict = field(compare=False)
    field_disc: int | None
    disc_bounds: tuple[int, int] = field(compare=False)

    @property
    def disc_certified(self) -> bool:
        return self.field_disc is not None

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def is_certified_at(self, p: int) -> bool:
        verdict = self.index_certified_primes.get(p)
        if verdict is not None:
            return verdict
        if self.poly_disc % (p * p) != 0:
            return True
        return dedekind_maximal(self.defining_poly, p)

    def gen(self) -> "NFElement":
        if self.degree == 1:
            return NFElement(self, (Fraction(-self.defining_poly.coeffs[0]),))
        return NFElement(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    def __call__(self, value) -> "NFElement":
        if isinstance(value, NFElement):
            return value
        if isinstance(value, (list, tuple)):
            return NFElement(self, value)
        return NFElement(self, (value,))

    def serialize(self) -> str:
        return self.defining_poly.serialize()

    def __str__(self):
        if self.degree == 1:
            return "Q"
        return f"Q[x]/({self.defining_poly})"


def make_field(f: IntPoly | Sequence[int] | str) -> NumberField:
    """Build a certified number field from a monic irreducible integer polynomial."""
    if isinstance(f, str):
        f = IntPoly.parse(f)
    elif not isinstance(f, IntPoly):
        f = IntPoly(f)
    n = f.degree
    if n < 1 or n > MAX_DEGREE:
        raise DegreeUnsupported(f"degree {n} outside 1..{MAX_DEGREE}")
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    _check_irreducible(f)

    disc = 1 if n == 1 else f.discriminant()
    certified = {}
    uncertain_index = 1
    for p, e in factor(disc).items():
        if e >= 2:
            ok = dedekind_maximal(f, p)
            certified[p] = ok
            if not ok:
                uncertain_index *= p ** (e // 2)
        else:
            certified[p] = True
    if uncertain_index == 1:
        field_disc = disc
        bounds = (abs(disc), abs(disc))
    else:
        field_disc = None
        bounds = (abs(disc) // uncertain_index**2, abs(disc))
    return NumberField(f, n, disc, certified, field_disc, bounds)


def _check_irreducible(f: IntPoly) -> None:
    if f.degree == 1:
        return
    # rational-root elimination: a monic integer polynomial has only integer roots
    c0 = f.coeffs[0]
    if c0 == 0:
        raise Reducible(f, IntPoly.x())
    for d in _divisors(abs(c0)):
        for r in (d, -d):
            if f(r) == 0:
                raise Reducible(f, IntPoly((-r, 1)))
    _, facs = f.factor_over_z()
    if len(facs) > 1 or facs[0][1] > 1:
        witness = min((g for g, _ in facs), key=lambda g: (g.degree, g.coeffs))
        raise Reducible(f, witness)


def _divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factor(n).items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


RATIONALS = make_field(IntPoly((0, 1)))


def quadratic_field(d: int) -> NumberField:
    """Q(sqrt d) presented by a generator of its ring of integers."""
    if d == 1 or any(e > 1 for e in factor(d).values()):
        raise ValueError(f"{d} is not a squarefree integer != 1")
    if d % 4 == 1:
        return make_field(IntPoly(((1 - d) // 4, -1, 1)))
    return make_field(IntPoly((-d, 0, 1)))


def cyclotomic_field(n: int) -> NumberField:
    from sympy import cyclotomic_poly, symbols, Poly

    x = symbols("x")
    return make_field(IntPoly.from_sympy(Poly(cyclotomic_poly(n, x), x)))


# -- prime decomposition -------------------------------------------------


@dataclass(frozen=True)
class PrimeIdealFactor:
    p: int
    e: int
    f: int
    kernel_poly: IntPoly

    @property
    def residue_size(self) -> int:
        return self.p**self.f

    @property
    def log_residue(self) -> LogSum:
        return LogSum.log_prime(self.p, self.f)

    def __str__(self):
        return f"({self.p}, {self.kernel_poly})"


def factor_prime(K: NumberField, p: int) -> list[PrimeIdealFactor]:
    """Kummer-Dedekind factorization of pO_K."""
    if not K.is_certified_at(p):
        raise IndexDivisor(f"{p} divides the index of Z[theta] in {K}")
    if K.degree == 1:
        return [PrimeIdealFactor(p, 1, 1, IntPoly((0, 1)))]
    return [PrimeIdealFactor(p, e, g.degree, g) for g, e in K.defining_poly.factor_mod(p)]


# -- discriminants -------------------------------------------------------


@dataclass(frozen=True)
class DiscriminantReport:
    """``total = sum(local_parts.values())`` exactly, in symbolic form."""

    total: LogSum
    local_parts: dict

    @property
    def total_value(self) -> float:
        return float(self.total)

    def local_value(self, p: int) -> float:
        return float(self.local_parts.get(p, LogSum()))

    def to_json(self) -> dict:
        from .logsum import render

        return {
            "total": render(self.total),
            "symbolic": str(self.total),
            "local_parts": {str(p): render(v) for p, v in self.local_parts.items()},
        }


def _report_from_abs_disc(n: int, degree: int) -> DiscriminantReport:
    parts = {p: LogSum.log_prime(p, Fraction(e, degree)) for p, e in factor(n).items()}
    total = sum(parts.values(), LogSum())
    return DiscriminantReport(total, parts)


def rel_log_disc(E: NumberField) -> DiscriminantReport:
    """``d_Q(E) = log|Disc O_E| / [E:Q]`` with its decomposition over primes."""
    if not E.disc_certified:
        lo, hi = E.disc_bounds
        raise DiscUncertain(
            f"discriminant of {E} only known in [{lo}, {hi}]",
            bounds=(_report_from_abs_disc(lo, E.degree), _report_from_abs_disc(hi, E.degree)),
        )
    return _report_from_abs_disc(abs(E.field_disc), E.degree)


def tower_relative_disc(K: NumberField, L: NumberField) -> DiscriminantReport:
    """``d_K(L) = [K:Q] (d_Q(L) - d_Q(K))``, prime by prime."""
    if L.degree % K.degree:
        raise DegreeMismatch(f"[L:Q]={L.degree} is not a multiple of [K:Q]={K.degree}")
    dl, dk = rel_log_disc(L), rel_log_disc(K)
    parts = {}
    for p in sorted(set(dl.local_parts) | set(dk.local_parts)):
        part = (dl.local_parts.get(p, LogSum()) - dk.local_parts.get(p, LogSum())) * K.degree
        if part:
            parts[p] = part
    return DiscriminantReport((dl.total - dk.total) * K.degree, parts)


# -- elements ------------------------------------------------------------


def _qpoly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _qpoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _qpoly_divmod(a, b):
    a = _qpoly_trim(a)
    b = _qpoly_trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / b[-1]
        q[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] -= c * bc
        a = _qpoly_trim(a[:-1] if a[-1] == 0 else a)
    return _qpoly_trim(q), a


def _qpoly_inverse_mod(a, m):
    """Inverse of a modulo m in Q[x] via the extended Euclidean algorithm."""
    r0, r1 = _qpoly_trim(m), _qpoly_trim(a)
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _qpoly_divmod(r0, r1)
        r0, r1 = r1, r
        qs = _qpoly_mul(q, s1)
        n = max(len(s0), len(qs))
        s0, s1 = s1, _qpoly_trim(
            [(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0) for i in range(n)]
        )
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    return [c / r0[0] for c in s0]


class NFElement:
    """Element of a number field as a Fraction combination of powers of theta."""

    __slots__ = ("field", "coeffs")

    def __init__(self, K: NumberField, coeffs: Iterable):
        c = [Fraction(x) for x in coeffs]
        if K.degree == 1:
            theta = Fraction(-K.defining_poly.coeffs[0])
            value = sum((a * theta**i for i, a in enumerate(c)), Fraction(0))
            c = [value]
        else:
            mod = [Fraction(a) for a in K.defining_poly.coeffs]
            if len(c) > K.degree:
                _, c = _qpoly_divmod(c, mod)
        c = c + [Fraction(0)] * (K.degree - len(c))
        self.field = K
        self.coeffs = tuple(c)

    def _coerce(self, other):
        if isinstance(other, NFElement):
            if other.field.defining_poly != self.field.defining_poly:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return NFElement(self.field, (other,))
        return NotImplemented

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return NFElement(self.field, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, (-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return NFElement(self.field, _qpoly_mul(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.field.degree == 1:
            return NFElement(self.field, (1 / self.coeffs[0],))
        mod = [Fraction(a) for a in self.field.defining_poly.coeffs]
        return NFElement(self.field, _qpoly_inverse_mod(list(self.coeffs), mod))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = NFElement(self.field, (1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def norm(self) -> Fraction:
        """Field norm to Q, via the resultant with the defining polynomial."""
        if self.field.degree == 1:
            return self.coeffs[0]
        den = math.lcm(*(c.denominator for c in self.coeffs))
        num = IntPoly(int(c * den) for c in self.coeffs)
        if num.is_zero():
            return Fraction(0)
        return Fraction(self.field.defining_poly.resultant(num), den**self.field.degree)

    def conjugates(self) -> list[complex]:
        """Images under the complex embeddings (one per root of f)."""
        import numpy as np

        f = self.field.defining_poly
        if self.field.degree == 1:
            return [complex(self.coeffs[0])]
        if self.field.degree == 2:
            c0, c1 = f.coeffs[0], f.coeffs[1]
            disc = c1 * c1 - 4 * c0
            sq = math.sqrt(disc) if disc >= 0 else 1j * math.sqrt(-disc)
            roots = [(-c1 + sq) / 2, (-c1 - sq) / 2]
        else:
            roots = list(np.roots(list(reversed(f.coeffs))))
        return [sum(float(a) * r**i for i, a in enumerate(self.coeffs)) for r in roots]

    def __repr__(self):
        if self.field.degree == 1:
            return str(self.coeffs[0])
        terms = []
        for i, a in enumerate(self.coeffs):
            if a:
                terms.append(str(a) if i == 0 else (f"{a}*t" if i == 1 else f"{a}*t^{i}"))
        return " + ".join(terms) if terms else "0"


def as_element(K: NumberField, x) -> NFElement:
    if isinstance(x, NFElement):
        return x
    if isinstance(x, (list, tuple)):
        return NFElement(K, x)
    return NFElement(K, (x,))


def element_valuation(K: NumberField, x, q: PrimeIdealFactor) -> int | float:
    """q-adic valuation of x in K; ``math.inf`` for zero."""
    x = as_element(K, x)
    if x.is_zero():
        return math.inf
    if x.is_rational():
        return q.e * valuation(x.coeffs[0], q.p)
    if K.degree > 2:
        raise UnsupportedDegree("element valuations beyond degree 2 are not supported")
    p = q.p
    den = math.lcm(*(c.denominator for c in x.coeffs))
    alpha = [int(c * den) for c in x.coeffs]
    k = min(valuation(a, p) for a in alpha if a)
    beta = [a // p**k for a in alpha]
    v = q.e * (k - valuation(den, p))
    _, r = poly_divmod_mod_p(beta, q.kernel_poly.coeffs, p)
    if r.is_zero():
        # beta lies in q and in no other prime above p
        nb = NFElement(K, beta).norm()
        v += valuation(nb, p) // q.f
    return v
