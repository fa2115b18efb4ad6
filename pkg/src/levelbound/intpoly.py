"""Dense univariate polynomials with integer coefficients.

Arithmetic is done here; factorization over Z and over F_p, and resultants,
are delegated to sympy.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from sympy import Poly, ZZ, symbols
from sympy.polys.galoistools import gf_factor, gf_from_int_poly

_X = symbols("x")


class IntPoly:
    """Polynomial with integer coefficients, stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        """Parse the comma-separated coefficient form, e.g. ``1,0,1`` for x^2 + 1."""
        return cls(int(t) for t in text.replace(" ", "").split(",") if t != "")

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-a for a in self.coeffs)

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
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result, base = IntPoly((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(i * a for i, a in enumerate(self.coeffs) if i)

    def content(self) -> int:
        from math import gcd

        g = 0
        for a in self.coeffs:
            g = gcd(g, a)
        return g

    def primitive(self) -> "IntPoly":
        g = self.content()
        if g == 0:
            return self
        if self.lc < 0:
            g = -g
        return IntPoly(a // g for a in self.coeffs)

    def reduce_mod(self, p: int) -> "IntPoly":
        """Coefficients reduced into [0, p)."""
        return IntPoly(a % p for a in self.coeffs)

    def compose(self, other: "IntPoly") -> "IntPoly":
        acc = IntPoly()
        for a in reversed(self.coeffs):
            acc = acc * other + a
        return acc

    def to_sympy(self) -> Poly:
        return Poly(list(reversed(self.coeffs)) or [0], _X, domain=ZZ)

    @classmethod
    def from_sympy(cls, poly: Poly) -> "IntPoly":
        return cls(int(c) for c in reversed(poly.all_coeffs()))

    def resultant(self, other: "IntPoly") -> int:
        return int(self.to_sympy().resultant(other.to_sympy()))

    def discriminant(self) -> int:
        return int(self.to_sympy().discriminant())

    def factor_over_z(self) -> tuple[int, list[tuple["IntPoly", int]]]:
        """Exact factorization over Z: (content, [(irreducible, multiplicity)])."""
        c, facs = self.to_sympy().factor_list()
        return int(c), [(IntPoly.from_sympy(f), int(e)) for f, e in facs]

    def factor_mod(self, p: int) -> list[tuple["IntPoly", int]]:
        """Monic irreducible factors of the reduction mod p, with multiplicities."""
        f = gf_from_int_poly(list(reversed(self.coeffs)), p)
        _, facs = gf_factor(f, p, ZZ)
        out = [(IntPoly(reversed([int(a) for a in g])), int(e)) for g, e in facs]
        return sorted(out, key=lambda t: (t[0].degree, t[0].coeffs))

    def rational_roots(self) -> list[Fraction]:
        """All rational roots, via the linear factors of the factorization over Z."""
        if self.degree < 1:
            return []
        roots = []
        for g, _ in self.factor_over_z()[1]:
            if g.degree == 1:
                roots.append(Fraction(-g.coeffs[0], g.coeffs[1]))
        return sorted(set(roots))

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(a) == 1:
                body = mono
            else:
                body = f"{abs(a)}*{mono}" if mono else str(abs(a))
            terms.append(("- " if a < 0 else "+ ") + body)
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def serialize(self) -> str:
        return ",".join(str(a) for a in self.coeffs)


def poly_divmod_mod_p(a: Sequence[int], b: Sequence[int], p: int):
    """Division with remainder in F_p[x] on low-first coefficient lists."""
    a = [x % p for x in a]
    b = [x % p for x in b]
    while b and b[-1] == 0:
        b.pop()
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod p")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        shift = len(a) - len(b)
        c = a[-1] * inv % p
        q[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] = (a[i + shift] - c * bc) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return IntPoly(q), IntPoly(a)


def gcd_mod_p(a: IntPoly, b: IntPoly, p: int) -> IntPoly:
    """Monic gcd in F_p[x]."""
    a, b = a.reduce_mod(p), b.reduce_mod(p)
    while not b.is_zero():
        _, r = poly_divmod_mod_p(a.coeffs, b.coeffs, p)
        a, b = b, r
    if a.is_zero():
        return a
    inv = pow(a.lc, -1, p)
    return IntPoly(c * inv % p for c in a.coeffs)
