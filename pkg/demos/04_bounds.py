# The explicit constants and the lemma-level inequalities for one curve.
from fractions import Fraction

from levelbound.bounds import (
    bound_report,
    dichotomy_check,
    disc_growth_check,
    divisibility_check,
    epsm_check,
    epsm_multiplicity_check,
    truncated_lemma_check,
)
from levelbound.ellcurve.curve import WeierstrassCurve

for d in (1, 2, 3, 4):
    print(bound_report(d).to_json())

E = WeierstrassCurve.parse("11a1: [0,-1,1,-10,-20]")
for v in (
    divisibility_check(E, 5),
    dichotomy_check(E, 5),
    epsm_check(E, 5, Fraction(1, 2)),
    truncated_lemma_check(E, 5),
    *disc_growth_check(E, 5),
):
    print(v.to_json())

# multiplicity at 2 equal to p, and twice p
print(epsm_multiplicity_check(7, 7).to_json())
print(epsm_multiplicity_check(14, 7).to_json())
