"""Naive point counting over prime fields."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..errors import BadReduction, PrimeTooLarge
from ..logsum import valuation
from .curve import WeierstrassCurve

MAX_PRIME = 10**6


def _model_with_good_reduction(E: WeierstrassCurve, p: int) -> WeierstrassCurve:
    E = E.integral_model()
    if valuation(E.discriminant, p) == 0:
        return E
    from .tate import tate_reduction

    red = tate_reduction(E, p)
    if not red.is_good:
        raise BadReduction(f"{E} has bad reduction at {p}")
    return red.minimal_model


def count_points_mod_p(E: WeierstrassCurve, p: int) -> int:
    """``#E(F_p)``, including the point at infinity."""
    if p >= MAX_PRIME:
        raise PrimeTooLarge(f"naive counting is capped below {MAX_PRIME}")
    E = _model_with_good_reduction(E, p)
    a1, a2, a3, a4, a6 = (Fraction(a).numerator % p for a in E.ainvs)
    x = np.arange(p, dtype=np.int64)
    lin = (a1 * x + a3) % p
    rhs = (((x + a2) % p * x % p + a4) % p * x % p + a6) % p
    if p == 2:
        count = 0
        for y in (0, 1):
            count += int(np.count_nonzero((y * y + lin * y - rhs) % 2 == 0))
        return count + 1
    disc = (lin * lin % p + 4 * rhs) % p
    is_square = np.zeros(p, dtype=bool)
    is_square[(x * x) % p] = True
    sols = np.where(disc == 0, 1, np.where(is_square[disc], 2, 0))
    return int(sols.sum()) + 1


def hasse_interval(p: int) -> tuple[float, float]:
    s = 2 * math.sqrt(p)
    return p + 1 - s, p + 1 + s


def lang_weil_bound(q: int, g: int = 1) -> float:
    """``(1 + sqrt q)^(2g)``."""
    return (1 + math.sqrt(q)) ** (2 * g)
