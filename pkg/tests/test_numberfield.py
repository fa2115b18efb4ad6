import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from levelbound.errors import (
    DegreeMismatch,
    DegreeUnsupported,
    DiscUncertain,
    IndexDivisor,
    NotMonic,
    Reducible,
    UnsupportedDegree,
)
from levelbound.intpoly import IntPoly
from levelbound.logsum import LogSum, factor, valuation
from levelbound.numberfield import (
    RATIONALS,
    NFElement,
    cyclotomic_field,
    element_valuation,
    factor_prime,
    make_field,
    quadratic_field,
    rel_log_disc,
    tower_relative_disc,
)

from oracles import cyclotomic_disc, kronecker, quadratic_disc, squarefree

QI = make_field("1,0,1")
ZETA8 = make_field("1,0,0,0,1")


# -- make_field ----------------------------------------------------------------


def test_gaussian_field():
    assert QI.degree == 2
    assert QI.field_disc == -4
    assert QI.index_certified_primes[2] is True


def test_linear_field_is_q():
    K = make_field("-3,1")
    assert K.degree == 1 and K.field_disc == 1


def test_reducible_has_witness():
    with pytest.raises(Reducible) as info:
        make_field("-1,0,1")
    assert info.value.witness == IntPoly((-1, 1))


def test_reducible_without_rational_root():
    # (x^2 + 1)(x^2 + 2)
    with pytest.raises(Reducible) as info:
        make_field("2,0,3,0,1")
    assert info.value.witness.degree == 2


def test_input_errors():
    with pytest.raises(NotMonic):
        make_field("1,0,2")
    with pytest.raises(DegreeUnsupported):
        make_field(IntPoly((1,) + (0,) * 8 + (1,)))


def test_uncertified_field_gives_interval():
    # Z[sqrt 5] has index 2 in the maximal order
    K = make_field("-5,0,1")
    assert K.field_disc is None
    assert K.disc_bounds == (5, 20)
    with pytest.raises(DiscUncertain) as info:
        rel_log_disc(K)
    lo, hi = info.value.bounds
    assert lo.total == LogSum.log(5) / 2 and hi.total == LogSum.log(20) / 2
    with pytest.raises(IndexDivisor):
        factor_prime(K, 2)


@pytest.mark.parametrize("n", [3, 4, 5, 7, 8, 9, 12, 15])
def test_cyclotomic_discriminants(n):
    K = cyclotomic_field(n)
    assert K.disc_certified
    assert abs(K.field_disc) == cyclotomic_disc(n)


def test_field_disc_congruence():
    for d in range(-50, 50):
        if squarefree(d):
            K = quadratic_field(d)
            assert K.field_disc == quadratic_disc(d)
            assert K.field_disc % 4 in (0, 1)


# -- factor_prime ---------------------------------------------------------------


def test_examples():
    f5 = factor_prime(QI, 5)
    assert [(q.e, q.f) for q in f5] == [(1, 1), (1, 1)]
    f2 = factor_prime(QI, 2)
    assert [(q.e, q.f) for q in f2] == [(2, 1)]
    assert [(q.e, q.f) for q in factor_prime(RATIONALS, 7)] == [(1, 1)]


def _splitting(K, p):
    facs = factor_prime(K, p)
    if len(facs) == 2:
        return 1
    return 0 if facs[0].e == 2 else -1


def test_quadratic_splitting_matches_kronecker():
    rng = random.Random(7)
    ds = [d for d in range(-2000, 2000) if squarefree(d)]
    primes = [p for p in range(2, 5000) if all(p % k for k in range(2, math.isqrt(p) + 1))]
    fields = {}
    for _ in range(1000):
        d = rng.choice(ds)
        p = rng.choice(primes)
        K = fields.setdefault(d, quadratic_field(d))
        facs = factor_prime(K, p)
        assert sum(q.e * q.f for q in facs) == 2
        assert math.prod(q.residue_size**q.e for q in facs) == p**2
        assert _splitting(K, p) == kronecker(K.field_disc, p)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5, 7, 8, 12]), st.sampled_from([2, 3, 5, 7, 11, 13, 29, 31]))
def test_cyclotomic_factorization_degrees(n, p):
    K = cyclotomic_field(n)
    if not K.is_certified_at(p):
        return
    facs = factor_prime(K, p)
    assert sum(q.e * q.f for q in facs) == K.degree
    if n % p:
        # unramified, residue degree = order of p mod n
        order = next(k for k in range(1, n + 1) if pow(p, k, n) == 1)
        assert all(q.e == 1 and q.f == order for q in facs)


# -- discriminant reports -------------------------------------------------------


def test_rel_log_disc_examples():
    r = rel_log_disc(QI)
    assert r.total == LogSum.log(2)
    assert r.local_parts == {2: LogSum.log(2)}
    assert rel_log_disc(RATIONALS).total == 0 and rel_log_disc(RATIONALS).local_parts == {}
    z = rel_log_disc(ZETA8)
    assert ZETA8.field_disc == 256
    assert z.total == LogSum.log(4)
    assert z.total_value == pytest.approx(math.log(4), abs=1e-12)


def test_tower_examples():
    assert tower_relative_disc(QI, ZETA8).total == LogSum.log(2) * 2
    assert tower_relative_disc(RATIONALS, ZETA8).total == rel_log_disc(ZETA8).total
    assert tower_relative_disc(QI, QI).total == 0
    with pytest.raises(DegreeMismatch):
        tower_relative_disc(make_field("-2,0,0,1"), QI)


def test_additivity_is_exact():
    for K in (QI, ZETA8, cyclotomic_field(12), cyclotomic_field(15)):
        r = rel_log_disc(K)
        assert r.total == sum(r.local_parts.values(), LogSum())


def test_neukirch_bound_on_fields():
    for K in (QI, ZETA8, cyclotomic_field(9), cyclotomic_field(16), cyclotomic_field(15)):
        n = K.degree
        for p in factor(abs(K.field_disc)):
            assert valuation(abs(K.field_disc), p) <= n * (1 + n)


# -- valuations -----------------------------------------------------------------


def test_valuation_examples():
    q2 = factor_prime(RATIONALS, 2)[0]
    assert element_valuation(RATIONALS, 12, q2) == 2
    assert element_valuation(RATIONALS, 0, q2) == math.inf
    (p2,) = factor_prime(QI, 2)
    assert element_valuation(QI, [1, 1], p2) == 1
    assert element_valuation(QI, 2, p2) == 2


def test_valuation_degree_cap():
    q = factor_prime(ZETA8, 3)[0]
    with pytest.raises(UnsupportedDegree):
        element_valuation(ZETA8, [0, 1], q)
    assert element_valuation(ZETA8, 9, q) == 2


elements = st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=30), min_size=2, max_size=2)


@settings(max_examples=150, deadline=None)
@given(
    st.sampled_from([-1, -2, 2, 3, 5, -7, 13, -15]),
    st.sampled_from([2, 3, 5, 7, 13]),
    elements,
    elements,
)
def test_valuation_is_a_valuation(d, p, a, b):
    K = quadratic_field(d)
    x, y = NFElement(K, a), NFElement(K, b)
    for q in factor_prime(K, p):
        vx, vy = element_valuation(K, x, q), element_valuation(K, y, q)
        if not x.is_zero() and not y.is_zero():
            assert element_valuation(K, x * y, q) == vx + vy
        assert element_valuation(K, x + y, q) >= min(vx, vy)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([-1, 2, 5, -3, 6]), st.sampled_from([2, 3, 5, 7]), elements)
def test_valuations_recover_norm(d, p, a):
    K = quadratic_field(d)
    x = NFElement(K, a)
    if x.is_zero():
        return
    total = sum(q.f * element_valuation(K, x, q) for q in factor_prime(K, p))
    assert total == valuation(x.norm(), p)


def test_norm_and_inverse():
    x = NFElement(QI, [Fraction(3), Fraction(4)])
    assert x.norm() == 25
    assert x * x.inverse() == NFElement(QI, [1])


def _biquadratic_towers(count=20, seed=11):
    from oracles import biquadratic_ms, biquadratic_poly

    rng = random.Random(seed)
    out = []
    for m in rng.sample(biquadratic_ms(), count):
        L = make_field(IntPoly(biquadratic_poly(m)))
        subs = [m, 4 * m + 1, m * (4 * m + 1)]
        out.append((m, L, subs))
    return out


def test_biquadratic_discriminant_is_product_of_quadratic_ones():
    for m, L, subs in _biquadratic_towers():
        assert L.disc_certified
        assert L.field_disc == math.prod(quadratic_disc(_sqf_part(s)) for s in subs)


def _sqf_part(n):
    s = 1 if n > 0 else -1
    for p, e in factor(abs(n)).items():
        s *= p ** (e % 2)
    return s


def test_biquadratic_contains_its_quadratic_subfields():
    from sympy import Poly, factor_list, sqrt, symbols

    x = symbols("x")
    for m, L, subs in _biquadratic_towers(5):
        f = Poly(list(reversed(L.defining_poly.coeffs)), x).as_expr()
        for s in subs:
            _, facs = factor_list(f, extension=sqrt(_sqf_part(s)))
            assert sorted(Poly(g, x).degree() for g, _ in facs) == [2, 2]


def test_tower_identity_on_biquadratic_towers():
    for m, L, subs in _biquadratic_towers():
        for s in subs:
            K = quadratic_field(_sqf_part(s))
            rel = tower_relative_disc(K, L)
            assert rel_log_disc(L).total == rel.total / K.degree + rel_log_disc(K).total
            for p, part in rel.local_parts.items():
                assert rel_log_disc(L).local_parts.get(p, LogSum()) == (
                    part / K.degree + rel_log_disc(K).local_parts.get(p, LogSum())
                )
            assert rel.total >= 0
