"""Tate's algorithm over Q.

Follows the classical exit-branch structure (Silverman, Advanced Topics
IV.9.4; Cremona, Algorithms for Modular Elliptic Curves 3.2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..logsum import valuation
from .curve import WeierstrassCurve


@dataclass(frozen=True)
class ReductionData:
    prime: int
    v_min_disc: int | None
    v_c4: int | float | None
    v_j: int | float
    reduction_class: str | None
    kodaira: str | None
    potentially_multiplicative: bool
    conductor_exponent: int | None = None
    tamagawa: int | None = None
    minimal_model: WeierstrassCurve | None = None

    @property
    def is_good(self) -> bool:
        return self.reduction_class == "good"

    def to_json(self) -> dict:
        out = {
            "p": self.prime,
            "class": self.reduction_class,
            "kodaira": self.kodaira,
            "v_min_disc": self.v_min_disc,
            "v_j": None if self.v_j == float("inf") else self.v_j,
            "potentially_multiplicative": self.potentially_multiplicative,
        }
        if self.conductor_exponent is not None:
            out["f"] = self.conductor_exponent
            out["c"] = self.tamagawa
        return out


def _v(x, p):
    return valuation(x, p)


def _nroots_quadratic(a, b, c, p) -> int:
    """Number of roots of a x^2 + b x + c in F_p (a is a unit)."""
    a, b, c = int(a) % p, int(b) % p, int(c) % p
    return sum(1 for x in range(p) if (a * x * x + b * x + c) % p == 0) if p < 50 else _nroots_q_large(a, b, c, p)


def _nroots_q_large(a, b, c, p):
    if p == 2:
        return sum(1 for x in range(2) if (a * x * x + b * x + c) % 2 == 0)
    d = (b * b - 4 * a * c) % p
    if d == 0:
        return 1
    return 2 if pow(d, (p - 1) // 2, p) == 1 else 0


def _nroots_cubic(b, c, d, p) -> int:
    """Number of distinct roots of T^3 + b T^2 + c T + d in F_p."""
    b, c, d = int(b) % p, int(c) % p, int(d) % p
    if p < 500:
        return sum(1 for t in range(p) if (t * t * t + b * t * t + c * t + d) % p == 0)
    from ..intpoly import IntPoly

    facs = IntPoly((d, c, b, 1)).factor_mod(p)
    return sum(1 for g, _ in facs if g.degree == 1)


def _pinv(x, p):
    return pow(int(x) % p, -1, p)


def _int(x) -> int:
    x = Fraction(x)
    assert x.denominator == 1, x
    return x.numerator


def _integral_everywhere(E: WeierstrassCurve) -> WeierstrassCurve:
    return E.integral_model()


def tate_reduction(E: WeierstrassCurve, p: int) -> ReductionData:
    """Local reduction data at p: Kodaira symbol, minimal discriminant valuation, class."""
    if not E.over_q:
        raise ValueError("Tate's algorithm is implemented over Q only")
    j = E.j_invariant
    v_j = _v(j, p) if j != 0 else float("inf")
    C = _integral_everywhere(E)
    while True:
        a1, a2, a3, a4, a6 = (_int(a) for a in C.ainvs)
        C = WeierstrassCurve(*(Fraction(a) for a in (a1, a2, a3, a4, a6)), label=E.label)
        b2, b4, b6, b8 = (_int(b) for b in (C.b2, C.b4, C.b6, C.b8))
        c4 = _int(C.c4)
        disc = _int(C.discriminant)
        vd = _v(disc, p)
        vc4 = _v(c4, p)

        def done(cls, symbol, f, cp):
            model = C
            return ReductionData(
                prime=p,
                v_min_disc=vd,
                v_c4=_v(_int(model.c4), p) if model.c4 != 0 else float("inf"),
                v_j=v_j,
                reduction_class=cls,
                kodaira=symbol,
                potentially_multiplicative=v_j < 0,
                conductor_exponent=f,
                tamagawa=cp,
                minimal_model=model,
            )

        if vd == 0:
            return done("good", "I0", 0, 1)

        # move the singular point to (0, 0)
        if p == 2:
            if b2 % 2 == 0:
                r = a4 % 2
                t = (r * (1 + a2 + a4) + a6) % 2
            else:
                r = a3 % 2
                t = (r + a4) % 2
        elif p == 3:
            r = (-b6) % 3 if b2 % 3 == 0 else (-b2 * b4) % 3
            t = (a1 * r + a3) % 3
        else:
            if c4 % p == 0:
                r = -_pinv(12, p) * b2
            else:
                r = -_pinv(12 * c4, p) * (_int(C.c6) + b2 * c4)
            t = -_pinv(2, p) * (a1 * r + a3)
            r, t = r % p, t % p
        C = C.rst_transform(r, 0, t)
        a1, a2, a3, a4, a6 = (_int(a) for a in C.ainvs)
        b2, b4, b6, b8 = (_int(b) for b in (C.b2, C.b4, C.b6, C.b8))

        if vc4 == 0:
            split = _nroots_quadratic(1, a1, -a2, p) > 0
            if split:
                cp = vd
            else:
                cp = 2 if vd % 2 == 0 else 1
            return done("multiplicative", f"I{vd}", 1, cp)

        if _v(a6, p) < 2:
            return done("additive", "II", vd, 1)
        if _v(b8, p) < 3:
            return done("additive", "III", vd - 1, 2)
        if _v(b6, p) < 3:
            cp = 3 if _nroots_quadratic(1, a3 // p, -(a6 // p**2), p) else 1
            return done("additive", "IV", vd - 2, cp)

        # make p | a1, a2 and p^2 | a3, a4 and p^3 | a6
        if p == 2:
            s = a2 % 2
            t = 2 * ((a6 // 4) % 2)
        elif p == 3:
            s = a1
            t = a3
        else:
            s = -a1 * _pinv(2, p)
            t = -a3 * _pinv(2, p)
        C = C.rst_transform(0, s, t)
        a1, a2, a3, a4, a6 = (_int(a) for a in C.ainvs)

        b = a2 // p
        c = a4 // p**2
        d = a6 // p**3
        w = 27 * d * d - b * b * c * c + 4 * b**3 * d - 18 * b * c * d + 4 * c**3
        x = 3 * c - b * b
        if w % p:
            cp = 1 + _nroots_cubic(b, c, d, p)
            return done("additive", "I0*", vd - 4, cp)
        if x % p:
            # a double root; move it to T = 0
            if p == 2:
                r = c % 2
            elif p == 3:
                r = c * _pinv(b, 3)
            else:
                r = (b * c - 9 * d) * _pinv(2 * x, p)
            r = p * (r % p)
            C = C.rst_transform(r, 0, 0)
            a1, a2, a3, a4, a6 = (_int(a) for a in C.ainvs)
            ix, iy, mx, my = 3, 3, p * p, p * p
            while True:
                a2t = a2 // p
                a3t = a3 // my
                a4t = (a4 // p) // mx
                a6t = (a6 // mx) // my
                if (a3t * a3t + 4 * a6t) % p:
                    cp = 4 if _nroots_quadratic(1, a3t, -a6t, p) else 2
                    break
                if p == 2:
                    t = my * (a6t % 2)
                else:
                    t = my * ((-a3t * _pinv(2, p)) % p)
                C = C.rst_transform(0, 0, t)
                a1, a2, a3, a4, a6 = (_int(a) for a in C.ainvs)
                my *= p
                iy += 1
                a2t = a2 // p
                a3t = a3 // my
                a4t = (a4 // p) // mx
                a6t = (a6 // mx) // my
                if (a4t * a4t - 4 * a6t * a2t) % p:
                    cp = 4 if _nroots_quadratic(a2t, a4t, a6t, p) else 2
                    break
                if p == 2:
                    r = mx * ((a6t * _pinv(a2t, 2)) % 2)
                else:
                    r = mx * ((-a4t * _pinv(2 * a2t, p)) % p)
                C = C.rst_transform(r, 0, 0)
                a1, a2, a3, a4, a6 = (_int(a) for a in C.ainvs)
                mx *= p
                ix += 1
            m = ix + iy - 5
            return done("additive", f"I{m}*", vd - ix - iy + 1, cp)

        # a triple root; move it to T = 0
        if p == 2:
            r = b % 2
        elif p == 3:
            r = (-d) % 3
        else:
            r = (-b * _pinv(3, p)) % p
        r = p * r
        C = C.rst_transform(r, 0, 0)
        a1, a2, a3, a4, a6 = (_int(a) for a in C.ainvs)
        x3t = a3 // p**2
        x6t = a6 // p**4
        if (x3t * x3t + 4 * x6t) % p:
            cp = 3 if _nroots_quadratic(1, x3t, -x6t, p) else 1
            return done("additive", "IV*", vd - 6, cp)
        if p == 2:
            t = x6t % 2
        else:
            t = (-x3t * _pinv(2, p)) % p
        C = C.rst_transform(0, 0, p * p * t)
        a1, a2, a3, a4, a6 = (_int(a) for a in C.ainvs)
        if _v(a4, p) < 4:
            return done("additive", "III*", vd - 7, 2)
        if _v(a6, p) < 6:
            return done("additive", "II*", vd - 8, 1)
        # not minimal: scale down by p and start over
        C = C.scale(p)


def reduction_at(E: WeierstrassCurve, q) -> ReductionData:
    """Valuation-level reduction data, usable over quadratic fields.

    Over Q this is Tate's algorithm.  Over a quadratic field the class is
    decided only where valuations alone decide it: good reduction of the
    given model, potentially multiplicative reduction from ``v_q(j) < 0``,
    and residue characteristic at least 5, where minimality is read off
    from ``v(c4)`` and ``v(c6)``.
    """
    from ..numberfield import element_valuation

    if E.over_q:
        p = q if isinstance(q, int) else q.p
        return tate_reduction(E, p)
    K = E.base
    j = E.j_invariant
    v_j = element_valuation(K, j, q) if not j.is_zero() else float("inf")
    vd = element_valuation(K, E.discriminant, q)
    vc4 = element_valuation(K, E.c4, q)
    vc6 = element_valuation(K, E.c6, q)
    v_min = None
    cls = None
    if vd == 0:
        v_min, cls = 0, "good"
    elif q.p >= 5:
        k = min(vd // 12, vc4 // 4 if vc4 != float("inf") else vd, vc6 // 6 if vc6 != float("inf") else vd)
        v_min = vd - 12 * k
        vc4_min = vc4 - 4 * k
        if v_min == 0:
            cls = "good"
        elif vc4_min == 0:
            cls = "multiplicative"
        else:
            cls = "additive"
    return ReductionData(
        prime=q.p,
        v_min_disc=v_min,
        v_c4=vc4,
        v_j=v_j,
        reduction_class=cls,
        kodaira=None,
        potentially_multiplicative=v_j < 0,
    )
