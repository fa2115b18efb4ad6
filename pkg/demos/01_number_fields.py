# Number fields from monogenic polynomials: discriminants, prime splitting,
# and the tower rule for relative log discriminants.
from levelbound.logsum import LogSum
from levelbound.numberfield import (
    cyclotomic_field,
    factor_prime,
    make_field,
    rel_log_disc,
    tower_relative_disc,
)

QI = make_field("1,0,1")  # x^2 + 1
print("Q(i): disc", QI.field_disc)
for p in (2, 3, 5, 13):
    print(f"  {p} ->", [(q.e, q.f) for q in factor_prime(QI, p)])

# x^4 + 1 gives Q(zeta_8); Z[zeta_8] is maximal, so the discriminant is exact
Z8 = cyclotomic_field(8)
print("Q(zeta8): disc", Z8.field_disc, " d_Q =", rel_log_disc(Z8).total)

# tower Q < Q(i) < Q(zeta8): d_Q(L) = d_K(L)/[K:Q] + d_Q(K), exactly
rel = tower_relative_disc(QI, Z8)
print("d_Q(i)(Q(zeta8)) =", rel.total)
assert rel_log_disc(Z8).total == rel.total / 2 + rel_log_disc(QI).total

# Z[sqrt 5] is not maximal at 2, so only an interval is known
K = make_field("-5,0,1")
print("Z[sqrt5]: certified?", K.disc_certified, " bounds", K.disc_bounds)

# exact sign decisions on log scale: 2^10 < 5^2 * 41
print("10 log 2 - log 1025 < 0:", LogSum({2: 10}) - LogSum.log(1025) < 0)
