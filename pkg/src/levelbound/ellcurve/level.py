"""Detection of full level-p structure, E[p] = Z/p x mu_p, over Q.

A rational point P of order p together with a second Galois-stable subgroup
C of order p splits E[p] as <P> + C.  The Weil pairing is Galois-equivariant
and non-degenerate, so Galois acts on C through the cyclotomic character and
C is isomorphic to mu_p; no pairing is computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from ..errors import UnsupportedPrime
from ..intpoly import IntPoly
from .curve import Point, WeierstrassCurve
from .divpoly import division_poly, multiplication_x, two_torsion_poly
from .torsion import divide_point

MAX_LEVEL_PRIME = 7


@dataclass(frozen=True)
class LevelStructureReport:
    p: int
    has_rational_p_point: bool
    stable_kernels: tuple[IntPoly, ...]
    full_level: bool
    certificate: str
    point: Point | None = None
    mu_kernel: IntPoly | None = field(default=None)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "has_rational_p_point": self.has_rational_p_point,
            "stable_kernels": [k.serialize() for k in self.stable_kernels],
            "full_level": self.full_level,
            "certificate": self.certificate,
            "point": None if self.point is None else [str(self.point.x), str(self.point.y)],
        }


def _closed_under_doubling(g: IntPoly, phi2: IntPoly, psi2sq: IntPoly) -> bool:
    """Whether x -> phi2(x)/psi2sq(x) maps the roots of g into themselves."""
    k = g.degree
    acc = IntPoly()
    for i, c in enumerate(g.coeffs):
        acc = acc + (phi2**i) * (psi2sq ** (k - i)) * c
    return acc.to_sympy().prem(g.to_sympy()).is_zero


def _normalize(poly: IntPoly) -> IntPoly:
    return poly.primitive()


def stable_kernels(E: WeierstrassCurve, p: int) -> list[IntPoly]:
    """Kernel polynomials of the rational p-isogenies of an integral model E."""
    if p == 2:
        return sorted(
            (_normalize(g) for g, _ in two_torsion_poly(E).factor_over_z()[1] if g.degree == 1),
            key=lambda g: g.coeffs,
        )
    half = (p - 1) // 2
    factors = [g for g, _ in division_poly(E, p).factor_over_z()[1] if g.degree <= half]
    phi2, psi2sq = multiplication_x(E, 2)
    kernels = set()
    for size in range(1, half + 1):
        for combo in combinations(factors, size):
            if sum(g.degree for g in combo) != half:
                continue
            g = IntPoly((1,))
            for h in combo:
                g = g * h
            if _closed_under_doubling(g, phi2, psi2sq):
                kernels.add(_normalize(g))
    return sorted(kernels, key=lambda g: g.coeffs)


def _kernel_of(P: Point, p: int) -> IntPoly:
    """Primitive kernel polynomial of <P> in x."""
    g = IntPoly((1,))
    xs = sorted({(P * k).x for k in range(1, (p - 1) // 2 + 1)})
    for x in xs:
        x = Fraction(x)
        g = g * IntPoly((-x.numerator, x.denominator))
    return _normalize(g)


def full_level_detect(E: WeierstrassCurve, p: int) -> LevelStructureReport:
    """Decide whether E[p] is Z/p x mu_p as a Galois module, for primes p <= 7."""
    if p not in (2, 3, 5, 7):
        raise UnsupportedPrime(f"full-level detection is supported for p in 2, 3, 5, 7; got {p}")
    if not E.over_q:
        raise ValueError("full-level detection is implemented over Q only")
    u = E.integral_scaling()
    Ei = E.integral_model()
    points = sorted(
        (Q for Q in divide_point(Ei, Point(Ei), p) if not Q.is_zero),
        key=lambda Q: (Q.x, Q.y),
    )
    kernels = stable_kernels(Ei, p)
    if u != 1:
        # back to the x-coordinate of the given model: x_E = x_Ei / u^2
        kernels = sorted((_normalize(g.compose(IntPoly((0, u * u)))) for g in kernels), key=lambda g: g.coeffs)
        points = [Point(E, Q.x / u**2, Q.y / u**3) for Q in points]
    P = points[0] if points else None
    full = P is not None and len(kernels) >= 2
    mu = None
    if full:
        own = _kernel_of(P, p)
        mu = next(g for g in kernels if g != own)
        cert = f"E[{p}] = <{P!r}> + ker({mu}); the second summand is mu_{p} by the Weil pairing"
    elif P is None:
        cert = f"no rational point of order {p}"
    else:
        cert = f"rational point {P!r} of order {p} but only {len(kernels)} stable kernel(s)"
    return LevelStructureReport(
        p=p,
        has_rational_p_point=P is not None,
        stable_kernels=tuple(kernels),
        full_level=full,
        certificate=cert,
        point=P,
        mu_kernel=mu,
    )
