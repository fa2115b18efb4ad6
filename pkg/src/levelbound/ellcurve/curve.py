"""Weierstrass curves, their standard invariants, and the group law."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParseError, SingularCurve
from ..numberfield import RATIONALS, NFElement, NumberField, as_element


@dataclass(frozen=True)
class WeierstrassCurve:
    """``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`` over ``base``."""

    a1: object
    a2: object
    a3: object
    a4: object
    a6: object
    base: NumberField = RATIONALS
    label: str = ""

    @classmethod
    def from_ainvs(cls, ainvs, base: NumberField = RATIONALS, label: str = "") -> "WeierstrassCurve":
        if len(ainvs) != 5:
            raise ValueError("need exactly five a-invariants")
        if base.degree == 1:
            coeffs = [Fraction(a) for a in ainvs]
        else:
            coeffs = [as_element(base, a) for a in ainvs]
        E = cls(*coeffs, base=base, label=label)
        if E.discriminant == 0:
            raise SingularCurve(f"singular curve {E.ainvs_str()}")
        return E

    @classmethod
    def parse(cls, text: str) -> "WeierstrassCurve":
        """Parse ``[a1,a2,a3,a4,a6]`` with an optional ``label:`` prefix."""
        label = ""
        body = text.strip()
        m = re.match(r"^([^:\[\]]+):\s*(.*)$", body)
        if m:
            label, body = m.group(1).strip(), m.group(2).strip()
        body = body.strip()
        if body.startswith("["):
            if not body.endswith("]"):
                raise ParseError(1, "unbalanced brackets")
            body = body[1:-1]
        parts = [t.strip() for t in body.split(",")]
        if len(parts) != 5:
            raise ParseError(1, f"expected 5 a-invariants, got {len(parts)}")
        try:
            ainvs = [Fraction(t) for t in parts]
        except ValueError as exc:
            raise ParseError(1, str(exc)) from None
        return cls.from_ainvs(ainvs, label=label)

    @property
    def ainvs(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def ainvs_str(self) -> str:
        return "[" + ",".join(str(a) for a in self.ainvs) + "]"

    @property
    def over_q(self) -> bool:
        return self.base.degree == 1

    def is_integral(self) -> bool:
        return self.over_q and all(Fraction(a).denominator == 1 for a in self.ainvs)

    # standard formulary

    @property
    def b2(self):
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self):
        a1, a2, a3, a4, a6 = self.ainvs
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def c4(self):
        return self.b2 * self.b2 - 24 * self.b4

    @property
    def c6(self):
        return -self.b2 * self.b2 * self.b2 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def j_invariant(self):
        return self.c4 * self.c4 * self.c4 / self.discriminant

    def rst_transform(self, r, s, t) -> "WeierstrassCurve":
        """Substitute ``x = x' + r``, ``y = y' + s x' + t``."""
        a1, a2, a3, a4, a6 = self.ainvs
        return WeierstrassCurve(
            a1 + 2 * s,
            a2 - s * a1 + 3 * r - s * s,
            a3 + r * a1 + 2 * t,
            a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
            a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1,
            base=self.base,
            label=self.label,
        )

    def scale(self, u) -> "WeierstrassCurve":
        """The model with ``a_i`` replaced by ``a_i / u^i``."""
        a1, a2, a3, a4, a6 = self.ainvs
        return WeierstrassCurve(
            a1 / u, a2 / u**2, a3 / u**3, a4 / u**4, a6 / u**6, base=self.base, label=self.label
        )

    def integral_scaling(self) -> int:
        """Smallest u > 0 with ``u^i a_i`` integral for every i."""
        if not self.over_q:
            raise ValueError("integral models are only provided over Q")
        u = 1
        for i, a in zip((1, 2, 3, 4, 6), self.ainvs):
            for p, e in _factor(Fraction(a).denominator).items():
                need = -(-e // i)
                while u % p**need:
                    u *= p
        return u

    def integral_model(self) -> "WeierstrassCurve":
        """An isomorphic model over Z; points map by ``(x, y) -> (u^2 x, u^3 y)``."""
        u = self.integral_scaling()
        return self.scale(Fraction(1, u)) if u != 1 else self

    def lift_x(self, x) -> list["Point"]:
        """All points over the base field with the given x-coordinate."""
        a1, a2, a3, a4, a6 = self.ainvs
        lin = a1 * x + a3
        rhs = x * x * x + a2 * x * x + a4 * x + a6
        d = lin * lin + 4 * rhs
        if not self.over_q:
            raise NotImplementedError("square roots are only taken over Q")
        root = rational_sqrt(Fraction(d))
        if root is None:
            return []
        ys = {(-lin + root) / 2, (-lin - root) / 2}
        return [Point(self, x, y) for y in sorted(ys)]

    def is_on_curve(self, x, y) -> bool:
        a1, a2, a3, a4, a6 = self.ainvs
        return y * y + a1 * x * y + a3 * y == x * x * x + a2 * x * x + a4 * x + a6

    def __str__(self):
        return (self.label + ": " if self.label else "") + self.ainvs_str()


def _factor(n):
    from ..logsum import factor

    return factor(n)


def rational_sqrt(q: Fraction):
    if q < 0:
        return None
    a, b = q.numerator, q.denominator
    ra, rb = math.isqrt(a), math.isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


class Point:
    """Affine point or the point at infinity (``x is None``)."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: WeierstrassCurve, x=None, y=None):
        if x is not None and not curve.is_on_curve(x, y):
            raise ValueError(f"({x}, {y}) is not on {curve}")
        self.curve = curve
        self.x = x
        self.y = y

    @property
    def is_zero(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __neg__(self):
        if self.is_zero:
            return self
        E = self.curve
        return Point(E, self.x, -self.y - E.a1 * self.x - E.a3)

    def __add__(self, other: "Point") -> "Point":
        E = self.curve
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        a1, a2, a3, a4, a6 = E.ainvs
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        if x1 == x2:
            if y1 + y2 + a1 * x2 + a3 == 0:
                return Point(E)
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
            nu = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) / (2 * y1 + a1 * x1 + a3)
        else:
            lam = (y2 - y1) / (x2 - x1)
            nu = (y1 * x2 - y2 * x1) / (x2 - x1)
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return Point(E, x3, y3)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n: int) -> "Point":
        if n < 0:
            return (-self) * (-n)
        result, base = Point(self.curve), self
        while n:
            if n & 1:
                result = result + base
            base = base + base
            n >>= 1
        return result

    __rmul__ = __mul__

    def order(self, limit: int = 64) -> int:
        """Order of a torsion point; raises if it exceeds ``limit``."""
        q = self
        for n in range(1, limit + 1):
            if q.is_zero:
                return n
            q = q + self
        raise ValueError("point has infinite or very large order")

    def __repr__(self):
        if self.is_zero:
            return "O"
        return f"({self.x}, {self.y})"


def curve_invariants(E: WeierstrassCurve):
    """``(discriminant, c4, c6, j)``."""
    disc = E.discriminant
    if disc == 0:
        raise SingularCurve(f"singular curve {E.ainvs_str()}")
    return disc, E.c4, E.c6, E.j_invariant
