"""Character lattices of the boundary torus and their level-m refinement.

The torus governing the boundary of the moduli of abelian varieties with
r-dimensional toric part has character lattice ``S_r = Sym^2 Z^r``.  Adding
level-m structure replaces ``S_r`` by ``(1/m) S_r``.  A boundary character,
read in the coarser lattice, pairs with every ray m times as much as before,
which is the lattice form of ``pi_m^* D = m D^[m]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from sympy import Matrix


def sym2_rank(r: int) -> int:
    if r < 1:
        raise ValueError("r must be positive")
    return r * (r + 1) // 2


def sym2_basis(r: int) -> list[tuple[int, int]]:
    """Index pairs (i, j), i <= j, labelling the basis e_i e_j of Sym^2 Z^r."""
    return [(i, j) for i in range(r) for j in range(i, r)]


@dataclass(frozen=True)
class SymLattice:
    r: int

    @property
    def rank(self) -> int:
        return sym2_rank(self.r)


@dataclass(frozen=True)
class LevelRefinement:
    base: SymLattice
    m: int

    @property
    def index(self) -> int:
        return refinement_index(self.base.r, self.m)

    def inclusion_matrix(self) -> Matrix:
        """S_r inside (1/m) S_r, in the bases e and e/m: multiplication by m."""
        return Matrix.eye(self.base.rank) * self.m


def refinement_index(r: int, m: int) -> int:
    """``[(1/m) S_r : S_r] = m^(r(r+1)/2)``."""
    if m < 1:
        raise ValueError("m must be positive")
    return m ** sym2_rank(r)


@dataclass(frozen=True)
class RayWitness:
    r: int
    m: int
    character: tuple[int, ...]
    ray: tuple[int, ...]
    pairing_coarse: int
    pairing_fine: int
    determinant: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.pairing_fine, self.pairing_coarse)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "m": self.m,
            "character": list(self.character),
            "ray": list(self.ray),
            "pairing_coarse": self.pairing_coarse,
            "pairing_fine": self.pairing_fine,
            "index": self.determinant,
        }


def _primitive(v) -> tuple[int, ...]:
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    w = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    return tuple(x // g for x in w) if g else tuple(w)


def ray_witness(m: int, r: int = 1, character: tuple[int, ...] | None = None) -> RayWitness:
    """Pairing of a boundary character with a primitive ray, before and after refinement.

    The default character is the diagonal form ``e_1^2 + ... + e_r^2``; the
    ray is its dual, the primitive functional equal to 1 on each diagonal
    basis vector.  In the basis of ``(1/m) S_r`` the character has coordinates
    ``A lambda`` with ``A = m I``, and the pulled-back ray is the primitive
    solution of ``A^T v = c rho``; the ratio of pairings is the multiplicity.
    """
    if m < 1 or r < 1:
        raise ValueError("m and r must be positive")
    basis = sym2_basis(r)
    n = len(basis)
    if character is None:
        character = tuple(1 if i == j else 0 for i, j in basis)
    rho = Matrix([1 if i == j else 0 for i, j in basis])
    lam = Matrix(character)
    A = LevelRefinement(SymLattice(r), m).inclusion_matrix()
    coarse = int((lam.T * rho)[0])
    if coarse == 0:
        raise ValueError("character does not meet the ray")
    # ray in the fine dual lattice: A^T v proportional to rho, v primitive
    v = A.T.solve(rho)
    v_prim = Matrix(_primitive(list(v)))
    fine = int(((A * lam).T * v_prim)[0])
    assert len(lam) == n
    return RayWitness(r, m, tuple(int(x) for x in lam), tuple(int(x) for x in v_prim), coarse, fine, int(A.det()))


def boundary_pullback_multiplicity(m: int, r: int = 1) -> tuple[int, RayWitness]:
    """Multiplicity of the boundary divisor under multiplication by m, with its witness."""
    w = ray_witness(m, r)
    mult = w.ratio
    assert mult.denominator == 1
    return int(mult), w
