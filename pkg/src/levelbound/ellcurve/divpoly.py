"""Division polynomials in x alone.

With ``psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6`` substituted for the y-dependence,
``psi_m = f_m`` for odd m and ``psi_m = psi_2 f_m`` for even m, where every
``f_m`` lies in Z[x] for an integral model.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..intpoly import IntPoly
from .curve import WeierstrassCurve


def _b_invariants(E: WeierstrassCurve) -> tuple[int, int, int, int]:
    if not E.is_integral():
        raise ValueError("division polynomials need an integral model over Q")
    return tuple(Fraction(b).numerator for b in (E.b2, E.b4, E.b6, E.b8))


def two_torsion_poly(E: WeierstrassCurve) -> IntPoly:
    b2, b4, b6, _ = _b_invariants(E)
    return IntPoly((b6, 2 * b4, b2, 4))


def reduced_division_polys(E: WeierstrassCurve, m: int) -> list[IntPoly]:
    """``[f_0, ..., f_m]``."""
    return list(_reduced(_b_invariants(E), m))


@lru_cache(maxsize=256)
def _reduced(b: tuple[int, int, int, int], m: int) -> tuple[IntPoly, ...]:
    b2, b4, b6, b8 = b
    psi2sq = IntPoly((b6, 2 * b4, b2, 4))
    big = psi2sq * psi2sq
    f = [
        IntPoly(),
        IntPoly((1,)),
        IntPoly((1,)),
        IntPoly((b8, 3 * b6, 3 * b4, b2, 3)),
        IntPoly((b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2)),
    ]
    for k in range(5, m + 1):
        n = k // 2
        if k % 2:
            if n % 2 == 0:
                f.append(big * f[n + 2] * f[n] ** 3 - f[n - 1] * f[n + 1] ** 3)
            else:
                f.append(f[n + 2] * f[n] ** 3 - big * f[n - 1] * f[n + 1] ** 3)
        else:
            f.append(f[n] * (f[n + 2] * f[n - 1] ** 2 - f[n - 2] * f[n + 1] ** 2))
    return tuple(f[: m + 1])


def division_poly(E: WeierstrassCurve, m: int) -> IntPoly:
    """The m-division polynomial as a polynomial in x.

    For odd m this is ``psi_m``; for even m it is ``psi_2^2 f_m``, whose roots
    are the x-coordinates of all nonzero m-torsion points.
    """
    if m < 1:
        raise ValueError("m must be positive")
    f = reduced_division_polys(E, max(m, 4))[m]
    if m % 2:
        return f
    return two_torsion_poly(E) * f


def multiplication_x(E: WeierstrassCurve, m: int) -> tuple[IntPoly, IntPoly]:
    """``(phi_m, psi_m^2)`` with ``x([m]P) = phi_m(x) / psi_m(x)^2``."""
    f = reduced_division_polys(E, max(m + 1, 4))
    x = IntPoly.x()
    psi2sq = two_torsion_poly(E)
    if m == 1:
        return x, IntPoly((1,))
    if m % 2:
        psisq = f[m] * f[m]
        cross = psi2sq * f[m + 1] * f[m - 1]
    else:
        psisq = psi2sq * f[m] * f[m]
        cross = f[m + 1] * f[m - 1]
    return x * psisq - cross, psisq
