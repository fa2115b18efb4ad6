# Reduction types, torsion, and full level-p structure E[p] = Z/p x mu_p.
from levelbound.ellcurve import full_level_detect, rational_torsion, tate_reduction
from levelbound.ellcurve.counting import count_points_mod_p
from levelbound.ellcurve.curve import WeierstrassCurve

E = WeierstrassCurve.parse("11a1: [0,-1,1,-10,-20]")
print(E, " j =", E.j_invariant)
print("at 11:", tate_reduction(E, 11).to_json())
print("torsion:", rational_torsion(E).structure())

r = full_level_detect(E, 5)
print("level 5:", r.full_level, "|", r.certificate)
print("level 7:", full_level_detect(E, 7).certificate)

# 5 <= (1 + sqrt 2)^2 and #E(F_2) = 5: good reduction at 2 is still possible
print("#E(F_2) =", count_points_mod_p(E, 2))

# a 7-torsion point with only one 7-isogeny is not a full level structure
F = WeierstrassCurve.parse("26b1: [1,-1,1,-3,3]")
print("26b1 level 7:", full_level_detect(F, 7).certificate)
