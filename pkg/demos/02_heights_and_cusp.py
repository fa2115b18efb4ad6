# Heights on the j-line.  The boundary is the cusp at infinity, so a
# rational j meets it exactly at the primes of its denominator.
from fractions import Fraction

from levelbound.heights import counting_height_check, truncated_counting

for j in (Fraction(1, 2), Fraction(1, 72), Fraction(-122023936, 161051), Fraction(1728)):
    b = truncated_counting(j)
    v = counting_height_check(b)
    print(f"j = {j}")
    print(f"   h = {b.height}   finite part = {b.finite_part}   N1 = {b.truncated}")
    print(f"   slacks: {v.lower_slack} (N1 vs weighted), {v.upper_slack} (weighted vs h)")

# the weighted count equals the finite part of the height, so the chain
# N1 <= sum n_q log|kappa(q)| <= h holds with no error term
