# The character lattice Sym^2 Z^r, its level-m refinement, and the factor m
# picked up by a boundary character along a ray.
from levelbound.toric import boundary_pullback_multiplicity, refinement_index, sym2_rank

for r in (1, 2, 3):
    print(f"r={r}: rank {sym2_rank(r)}, index at m=6: {refinement_index(r, 6)}")

for m, r in ((1, 1), (5, 1), (3, 2), (4, 3)):
    mult, w = boundary_pullback_multiplicity(m, r)
    print(f"m={m}, r={r}: multiplicity {mult}, pairing {w.pairing_coarse} -> {w.pairing_fine}")
