import math

import pytest
from hypothesis import given, strategies as st

from levelbound.toric import (
    LevelRefinement,
    SymLattice,
    boundary_pullback_multiplicity,
    ray_witness,
    refinement_index,
    sym2_basis,
    sym2_rank,
)


def test_rank_examples():
    assert [sym2_rank(r) for r in (1, 2, 3)] == [1, 3, 6]
    assert len(sym2_basis(3)) == 6


def test_index_examples():
    assert refinement_index(1, 7) == 7
    assert refinement_index(2, 3) == 27
    assert refinement_index(3, 2) == 64
    assert LevelRefinement(SymLattice(2), 3).index == 27


def test_multiplicity_examples():
    m, w = boundary_pullback_multiplicity(1)
    assert m == 1 and w.pairing_fine == w.pairing_coarse
    m, w = boundary_pullback_multiplicity(5, 1)
    assert m == 5 and (w.pairing_coarse, w.pairing_fine) == (1, 5)
    m, w = boundary_pullback_multiplicity(3, 2)
    assert m == 3 and w.character == (1, 0, 1) and w.pairing_fine == 3 * w.pairing_coarse


def test_witness_for_off_diagonal_character():
    w = ray_witness(4, 2, character=(1, 1, 0))
    assert w.ratio == 4


@given(st.integers(1, 3), st.integers(1, 100), st.integers(1, 100))
def test_index_is_multiplicative_on_coprime_levels(r, m1, m2):
    if math.gcd(m1, m2) == 1:
        assert refinement_index(r, m1 * m2) == refinement_index(r, m1) * refinement_index(r, m2)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_multiplicity_equals_level(r):
    for m in range(1, 101):
        mult, w = boundary_pullback_multiplicity(m, r)
        assert mult == m
        assert w.determinant == refinement_index(r, m)
