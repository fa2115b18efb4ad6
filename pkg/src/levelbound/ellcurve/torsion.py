"""Rational torsion over Q: a reduction bound, then an explicit point search."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import primerange

from ..logsum import factor, valuation
from .counting import count_points_mod_p
from .curve import Point, WeierstrassCurve
from .divpoly import division_poly, multiplication_x


@dataclass(frozen=True)
class TorsionData:
    order: int
    invariants: tuple[int, ...]
    generators: tuple[Point, ...]
    points: tuple[Point, ...]
    reduction_bound: int

    def structure(self) -> str:
        if not self.invariants:
            return "trivial"
        return " x ".join(f"Z/{n}" for n in self.invariants)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "structure": list(self.invariants),
            "generators": [[str(P.x), str(P.y)] for P in self.generators],
        }


def good_primes(E: WeierstrassCurve, count: int, start: int = 3):
    """The first ``count`` primes >= start not dividing 2 * disc."""
    disc = E.integral_model().discriminant
    out = []
    for p in primerange(start, 10**6):
        if valuation(disc, p) == 0:
            out.append(int(p))
            if len(out) == count:
                break
    return out


def torsion_bound(E: WeierstrassCurve, nprimes: int = 10) -> int:
    """gcd of ``#E(F_p)`` over good odd primes; a multiple of the torsion order."""
    g = 0
    for p in good_primes(E, nprimes):
        g = math.gcd(g, count_points_mod_p(E, p))
    return g


def divide_point(E: WeierstrassCurve, P: Point, n: int) -> list[Point]:
    """All rational Q with ``nQ = P`` (E integral over Q)."""
    if P.is_zero:
        cands = division_poly(E, n).rational_roots()
        found = [Point(E)]
    else:
        phi, psisq = multiplication_x(E, n)
        xp = Fraction(P.x)
        num, den = xp.numerator, xp.denominator
        poly = phi * den - psisq * num
        cands = poly.rational_roots()
        found = []
    for x in cands:
        for Q in E.lift_x(x):
            if Q * n == P:
                found.append(Q)
    return found


def primary_part(E: WeierstrassCurve, ell: int) -> list[Point]:
    """All rational points of ell-power order, O included."""
    seen = {Point(E)}
    frontier = [Point(E)]
    while frontier:
        P = frontier.pop()
        for Q in divide_point(E, P, ell):
            if Q not in seen:
                seen.add(Q)
                frontier.append(Q)
    return sorted(seen, key=_point_key)


def _point_key(P: Point):
    return (0, 0, 0) if P.is_zero else (1, P.x, P.y)


def rational_torsion(E: WeierstrassCurve) -> TorsionData:
    """Structure and points of E(Q)_tors."""
    Ei = E.integral_model()
    bound = torsion_bound(Ei)
    parts = []
    for ell in sorted(factor(bound)):
        pts = primary_part(Ei, ell)
        if len(pts) > 1:
            parts.append(pts)
    points = [Point(Ei)]
    for pts in parts:
        points = [P + Q for P in points for Q in pts]
    orders = {P: P.order() for P in points}
    n = len(points)
    exponent = max(orders.values())
    invariants: tuple[int, ...]
    if n == 1:
        invariants, gens = (), ()
    elif exponent == n:
        P = min((P for P in points if orders[P] == n), key=_point_key)
        invariants, gens = (n,), (P,)
    else:
        n1 = n // exponent
        P = min((P for P in points if orders[P] == exponent), key=_point_key)
        span = {P * k for k in range(exponent)}
        Q = min(
            (Q for Q in points if orders[Q] == n1 and all((Q * k) not in span for k in range(1, n1))),
            key=_point_key,
        )
        invariants, gens = (n1, exponent), (Q, P)
    u = E.integral_scaling()

    def to_e(P: Point) -> Point:
        if u == 1 or P.is_zero:
            return P if u == 1 else Point(E)
        return Point(E, P.x / u**2, P.y / u**3)

    return TorsionData(
        order=n,
        invariants=invariants,
        generators=tuple(to_e(P) for P in gens),
        points=tuple(to_e(P) for P in sorted(points, key=_point_key)),
        reduction_bound=bound,
    )
