import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from levelbound.bounds import (
    BoundParameters,
    PAPER_M,
    Surd,
    beta,
    dichotomy_check,
    disc_growth_check,
    divisibility_check,
    epsm_check,
    epsm_multiplicity_check,
    gamma,
    min_forced_prime,
    neukirch_check,
    torsion_reduction_bound,
    truncated_lemma_check,
)
from levelbound.ellcurve.curve import Point, WeierstrassCurve
from levelbound.ellcurve.level import full_level_detect
from levelbound.ellcurve.tate import tate_reduction
from levelbound.errors import DiscUncertain, UnsupportedPrime
from levelbound.heights import truncated_counting
from levelbound.logsum import LogSum, valuation
from levelbound.ledger import bundled_corpus
from levelbound.numberfield import RATIONALS, cyclotomic_field, make_field

CURVES = {r.label: r.curve() for r in bundled_corpus()}
E11 = CURVES["11a1"]
CONGRUENT = WeierstrassCurve.from_ainvs([0, 0, 0, -1, 0])

# full level-p detections over the bundled corpus, from PARI (elltors + ellisomat)
PARI_FULL_LEVEL = {
    2: ["15a1", "15a2", "15a3", "17a2", "21a1", "24a1", "30a2", "32a2", "33a1", "39a1", "48a1", "210e2"],
    3: ["14a1", "14a2", "19a1", "26a1", "27a1", "27a3", "35a1", "37b1", "54a1", "54b1"],
    5: ["11a1"],
    7: [],
}


# -- full level detection -------------------------------------------------------


def test_level_examples():
    r = full_level_detect(E11, 5)
    assert r.full_level and r.has_rational_p_point and len(r.stable_kernels) >= 2
    assert Point(E11, 5, 5) in {r.point * k for k in range(5)}
    assert full_level_detect(CONGRUENT, 2).full_level
    r7 = full_level_detect(E11, 7)
    assert not r7.full_level and not r7.has_rational_p_point
    with pytest.raises(UnsupportedPrime):
        full_level_detect(E11, 11)


def test_single_isogeny_is_not_enough():
    r = full_level_detect(CURVES["26b1"], 7)
    assert r.has_rational_p_point and len(r.stable_kernels) == 1 and not r.full_level


def test_mu_kernel_of_11a1_is_quadratic():
    r = full_level_detect(E11, 5)
    assert r.mu_kernel.degree == 2
    # its splitting field is Q(sqrt 5), as it must be for mu_5 modulo +-1
    c, b, a = r.mu_kernel.coeffs
    disc = b * b - 4 * a * c
    assert math.isqrt(disc // 5) ** 2 * 5 == disc


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_detections_match_pari(p):
    found = sorted(label for label, E in CURVES.items() if full_level_detect(E, p).full_level)
    assert found == sorted(PARI_FULL_LEVEL[p])


@pytest.mark.parametrize("p", [2, 3, 5])
def test_divisibility_for_detected_curves(p):
    for label in PARI_FULL_LEVEL[p]:
        j = CURVES[label].j_invariant
        for q in (2, 3, 5, 7, 11, 13, 17, 19, 37, 53):
            if j and valuation(j, q) < 0:
                assert (-valuation(j, q)) % p == 0


def test_kernels_are_closed_subgroups():
    # each detected kernel polynomial vanishes on x(kP) for its own generator
    r = full_level_detect(CURVES["14a1"], 3)
    assert r.point is not None
    assert any(g(r.point.x) == 0 for g in r.stable_kernels)


# -- constants --------------------------------------------------------------------


def test_gamma_examples():
    assert float(gamma(1)) == pytest.approx(5.828427124746, abs=1e-12)
    assert gamma(1) == Surd(3, 2, 2)
    assert gamma(2) == 9 and gamma(4) == 25
    assert min_forced_prime(1) == 7
    assert min_forced_prime(2) == 11
    assert min_forced_prime(3) == 17
    assert float(gamma(3)) == pytest.approx(14.65685424949, abs=1e-9)


@pytest.mark.parametrize("d", range(1, 9))
def test_gamma_is_torsion_bound_at_residue_size_2_to_d(d):
    assert gamma(d) == torsion_reduction_bound(2**d)
    assert gamma(d) < gamma(d + 1)


def test_torsion_reduction_bound_examples():
    assert float(torsion_reduction_bound(2)) == pytest.approx(5.8284, abs=1e-4)
    assert torsion_reduction_bound(4) == 9
    assert torsion_reduction_bound(25) == 36


@given(st.integers(min_value=2, max_value=10**6))
def test_surd_bound_agrees_with_float(n):
    exact = torsion_reduction_bound(n)
    assert float(exact) == pytest.approx((1 + math.sqrt(n)) ** 2, rel=1e-12)
    k = exact.floor()
    assert Surd(k) <= exact < Surd(k + 1)


def test_alpha_modes():
    assert BoundParameters.for_mode("classical").alpha == 1
    assert BoundParameters.for_mode("paper").alpha == Fraction(1, PAPER_M)
    assert PAPER_M == 96 * 48
    assert beta(1) == 2 and beta(2) == 3


# -- verdicts -----------------------------------------------------------------------


def test_neukirch_examples():
    v = neukirch_check(make_field("1,0,1"), 2)
    assert (v.lhs, v.rhs, v.slack, v.status) == (2, 6, 4, "pass")
    v = neukirch_check(RATIONALS, 5)
    assert (v.lhs, v.rhs) == (0, 2)
    v = neukirch_check(make_field("1,0,0,0,1"), 2)
    assert (v.lhs, v.rhs, v.slack) == (8, 20, 12)
    with pytest.raises(DiscUncertain):
        neukirch_check(make_field("-5,0,1"), 2)


@pytest.mark.parametrize("n", [3, 5, 7, 8, 9, 12, 16, 20])
def test_neukirch_on_cyclotomic_fields(n):
    K = cyclotomic_field(n)
    for p in (2, 3, 5, 7):
        assert neukirch_check(K, p).status == "pass"


def test_epsm_examples():
    assert epsm_check(E11, 5, Fraction(1, 3)).status == "precondition_unmet"
    assert tate_reduction(E11, 2).is_good
    v = epsm_multiplicity_check(7, 7)
    assert v.status == "pass" and v.slack == 0
    v = epsm_multiplicity_check(14, 7, eps=Fraction(1, 2))
    assert v.status == "pass" and v.slack == LogSum.log_prime(2, Fraction(7, 2))
    assert v.extra["unconditional_slack"] == pytest.approx(7 * math.log(2), abs=1e-9)
    assert epsm_multiplicity_check(6, 7).status == "fail"


def test_truncated_lemma_examples():
    v = truncated_lemma_check(E11, 5)
    assert v.lhs == LogSum.log_prime(11, 5) and v.slack == 0 and v.status == "pass"
    v = truncated_lemma_check(CONGRUENT, 2)
    assert v.lhs == 0 and v.status == "pass"
    assert truncated_lemma_check(E11, 7).status == "precondition_unmet"


def test_truncated_lemma_with_two_bad_primes():
    hits = 0
    for label in PARI_FULL_LEVEL[3]:
        E = CURVES[label]
        b = truncated_counting(E.j_invariant)
        if len(b.cusp_contributions) < 2:
            continue
        hits += 1
        v = truncated_lemma_check(E, 3)
        expected = sum(((c.prime_factor.log_residue * (c.n_q - 3)) for c in b.cusp_contributions), LogSum())
        assert v.slack == expected and v.slack >= 0
    assert hits > 0


def test_disc_growth_examples():
    point, mu = disc_growth_check(E11, 5)
    assert point.lhs == 0 and point.status == "pass"
    assert mu.extra["proxy_degree"] == 2 and mu.lhs == LogSum.log(5) / 2
    assert mu.rhs == LogSum.log_prime(5, 3)
    assert "proxy_lower_bound" in mu.notes
    point, mu = disc_growth_check(CONGRUENT, 2)
    assert point.lhs == 0 and point.rhs == LogSum.log_prime(2, 2)


def test_divisibility_and_dichotomy_on_11a1():
    assert divisibility_check(E11, 5).status == "pass"
    v = dichotomy_check(E11, 5)
    assert v.status == "pass" and v.slack == gamma(1) - 5


def test_corpus_dichotomy_and_counting():
    for p, labels in PARI_FULL_LEVEL.items():
        for label in labels:
            E = CURVES[label]
            assert p <= gamma(1) or not tate_reduction(E, 2).is_good
            b = truncated_counting(E.j_invariant)
            for c in b.cusp_contributions:
                assert c.n_q >= p
            assert b.truncated * p <= b.weighted_count


def test_verdict_json_shape():
    d = truncated_lemma_check(E11, 5).to_json()
    assert set(d) >= {"name", "lhs", "rhs", "slack", "status", "notes"}
    assert d["slack"] == 0.0
