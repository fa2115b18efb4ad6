import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from levelbound.ellcurve.counting import count_points_mod_p, hasse_interval
from levelbound.ellcurve.curve import Point, WeierstrassCurve, curve_invariants
from levelbound.ellcurve.divpoly import division_poly, multiplication_x, two_torsion_poly
from levelbound.ellcurve.tate import reduction_at, tate_reduction
from levelbound.ellcurve.torsion import rational_torsion
from levelbound.errors import BadReduction, ParseError, PrimeTooLarge, SingularCurve
from levelbound.intpoly import IntPoly
from levelbound.ledger import bundled_corpus
from levelbound.numberfield import factor_prime, quadratic_field

from oracles import brute_count

E11 = WeierstrassCurve.from_ainvs([0, -1, 1, -10, -20], label="11a1")
CONGRUENT = WeierstrassCurve.from_ainvs([0, 0, 0, -1, 0])

# (label, p, Kodaira symbol, v(minimal discriminant), conductor exponent, Tamagawa number), from PARI
PARI_LOCAL = [
    ("11a1", 11, "I5", 5, 1, 5),
    ("27a1", 3, "IV*", 9, 3, 3),
    ("14a1", 2, "I6", 6, 1, 2),
    ("14a1", 7, "I3", 3, 1, 3),
    ("15a1", 3, "I4", 4, 1, 2),
    ("15a1", 5, "I4", 4, 1, 4),
    ("20a1", 2, "IV*", 8, 2, 3),
    ("20a1", 5, "I2", 2, 1, 2),
    ("32a1", 2, "I3*", 12, 5, 4),
    ("36a1", 2, "IV", 4, 2, 3),
    ("36a1", 3, "III", 3, 2, 2),
    ("49a1", 7, "III", 3, 2, 2),
    ("50b1", 2, "I5", 5, 1, 5),
    ("50b1", 5, "II", 2, 2, 1),
    ("54a1", 2, "I3", 3, 1, 1),
    ("54a1", 3, "IV*", 9, 3, 3),
    ("210e2", 2, "I8", 8, 1, 8),
    ("210e2", 3, "I8", 8, 1, 8),
    ("210e2", 5, "I4", 4, 1, 4),
    ("210e2", 7, "I2", 2, 1, 2),
]

CURVES = {r.label: r.curve() for r in bundled_corpus()}


def test_invariants_examples():
    disc, c4, c6, j = curve_invariants(E11)
    assert disc == -(11**5)
    assert j == Fraction(-122023936, 161051)
    disc, c4, c6, j = curve_invariants(CONGRUENT)
    assert (disc, c4, c6, j) == (64, 48, 0, 1728)
    with pytest.raises(SingularCurve):
        WeierstrassCurve.from_ainvs([0, 0, 0, 0, 0])


@pytest.mark.parametrize("label", sorted(CURVES))
def test_formulary_identity(label):
    E = CURVES[label]
    assert 1728 * E.discriminant == E.c4**3 - E.c6**2
    assert 4 * E.b8 == E.b2 * E.b6 - E.b4**2


def test_parse():
    E = WeierstrassCurve.parse("11a1: [0,-1,1,-10,-20]")
    assert E.label == "11a1" and E.ainvs == E11.ainvs
    assert WeierstrassCurve.parse("[0, 0, 0, -1/4, 0]").a4 == Fraction(-1, 4)
    with pytest.raises(ParseError):
        WeierstrassCurve.parse("[0,0,1]")


@pytest.mark.parametrize("label,p,kodaira,vd,f,c", PARI_LOCAL)
def test_tate_matches_pari(label, p, kodaira, vd, f, c):
    r = tate_reduction(CURVES[label], p)
    assert (r.kodaira, r.v_min_disc, r.conductor_exponent, r.tamagawa) == (kodaira, vd, f, c)


def test_tate_examples_and_coherence():
    assert tate_reduction(E11, 11).reduction_class == "multiplicative"
    assert tate_reduction(E11, 2).is_good
    assert tate_reduction(CURVES["27a1"], 3).reduction_class == "additive"
    for E in CURVES.values():
        for p in (2, 3, 5, 7, 11, 13, 17, 19, 37, 43, 53):
            r = tate_reduction(E, p)
            assert r.potentially_multiplicative == (r.v_j < 0)
            if r.reduction_class == "good":
                assert r.v_min_disc == 0
            if r.reduction_class == "multiplicative":
                assert r.v_min_disc == -r.v_j and r.v_c4 == 0


def test_non_minimal_model_is_reduced():
    # 11a1 scaled by u = 2 and u = 3
    for u in (2, 3):
        a = E11.ainvs
        big = WeierstrassCurve.from_ainvs([a[0] * u, a[1] * u**2, a[2] * u**3, a[3] * u**4, a[4] * u**6])
        assert tate_reduction(big, u).is_good
        assert tate_reduction(big, 11).kodaira == "I5"


def test_potential_multiplicativity_under_twist():
    for label in ("11a1", "14a1", "37a1"):
        E = CURVES[label]
        for d in (-1, 2, 3, -7):
            # quadratic twist by d: (a1, a2, a3, a4, a6) -> short model twist
            c4, c6 = E.c4, E.c6
            T = WeierstrassCurve.from_ainvs([0, 0, 0, -27 * c4 * d * d, -54 * c6 * d**3])
            for p in (2, 3, 5, 7, 11, 37):
                assert (tate_reduction(T, p).v_j < 0) == (tate_reduction(E, p).v_j < 0)


def test_reduction_over_quadratic_field():
    K = quadratic_field(-1)
    E = WeierstrassCurve.from_ainvs([0, -1, 1, -10, -20], base=K)
    for q in factor_prime(K, 11):
        r = reduction_at(E, q)
        assert r.reduction_class == "multiplicative" and r.v_j == -5
    (q2,) = factor_prime(K, 2)
    assert reduction_at(E, q2).is_good
    for q in factor_prime(K, 5):
        assert reduction_at(E, q).is_good


# -- counting -------------------------------------------------------------------


def test_counting_examples():
    assert count_points_mod_p(WeierstrassCurve.from_ainvs([0, 0, 0, 1, 0]), 5) == 4
    assert count_points_mod_p(E11, 2) == 5
    assert 5 <= (1 + math.sqrt(2)) ** 2
    # y^2 = x^3 + 1 has additive reduction at 2 (type IV), so there is no count
    with pytest.raises(BadReduction):
        count_points_mod_p(WeierstrassCurve.from_ainvs([0, 0, 0, 0, 1]), 2)
    with pytest.raises(BadReduction):
        count_points_mod_p(E11, 11)
    with pytest.raises(PrimeTooLarge):
        count_points_mod_p(E11, 1000003)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(CURVES)), st.sampled_from([2, 3, 5, 7, 13, 17, 23, 29, 31, 41, 59, 61]))
def test_counting_matches_brute_force(label, p):
    E = CURVES[label]
    if not tate_reduction(E, p).is_good:
        return
    model = tate_reduction(E, p).minimal_model
    assert count_points_mod_p(E, p) == brute_count(model.ainvs, p)


def test_hasse_interval():
    lo, hi = hasse_interval(101)
    for E in list(CURVES.values())[:10]:
        assert lo <= count_points_mod_p(E, 101) <= hi


# -- division polynomials -------------------------------------------------------


def test_division_poly_examples():
    E = CURVES["14a1"]
    assert division_poly(E, 2) == two_torsion_poly(E) == IntPoly((E.b6, 2 * E.b4, E.b2, 4))
    assert division_poly(CONGRUENT, 3) == IntPoly((-1, 0, -6, 0, 3))
    assert division_poly(E11, 5).degree == 12


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_division_poly_degree(p):
    assert division_poly(E11, p).degree == (p * p - 1) // 2


def test_multiplication_map_agrees_with_group_law():
    E = CURVES["37a1"]
    P = Point(E, Fraction(0), Fraction(0))
    for m in range(1, 7):
        phi, psisq = multiplication_x(E, m)
        Q = P * m
        assert Fraction(phi(0), psisq(0)) == Q.x


# -- torsion --------------------------------------------------------------------


def test_torsion_examples():
    t = rational_torsion(E11)
    assert t.invariants == (5,)
    assert Point(E11, 5, 5) in t.points and Point(E11, 5, 5).order() == 5
    assert rational_torsion(CONGRUENT).invariants == (2, 2)
    assert rational_torsion(WeierstrassCurve.from_ainvs([0, 0, 0, 0, 3])).order == 1


# orders from PARI elltors
PARI_TORSION = {
    "11a1": (5,), "11a2": (), "11a3": (5,), "14a1": (6,), "15a1": (4, 2), "15a4": (8,),
    "26b1": (7,), "37a1": (), "210e2": (8, 2), "20a1": (6,), "389a1": (), "5077a1": (),
}


@pytest.mark.parametrize("label", sorted(PARI_TORSION))
def test_torsion_matches_pari(label):
    if label not in CURVES:
        E = WeierstrassCurve.from_ainvs([1, 1, 1, 35, -28])
    else:
        E = CURVES[label]
    t = rational_torsion(E)
    assert math.prod(t.invariants) == math.prod(PARI_TORSION[label])
    assert sorted(t.invariants) == sorted(PARI_TORSION[label])
    for P in t.points:
        assert (P * t.order).is_zero


def test_rational_model_torsion():
    # 11a1 with x scaled by 1/4, y by 1/8
    a = E11.ainvs
    E = WeierstrassCurve.from_ainvs([a[0] / 2, a[1] / 4, a[2] / 8, a[3] / 16, a[4] / 64])
    t = rational_torsion(E)
    assert t.order == 5
    assert all(E.is_on_curve(P.x, P.y) for P in t.points if not P.is_zero)
