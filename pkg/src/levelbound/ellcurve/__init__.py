"""Elliptic curves: reduction theory, point counts, torsion and level structures."""

from .curve import Point, WeierstrassCurve, curve_invariants
from .tate import ReductionData, reduction_at, tate_reduction
from .level import LevelStructureReport, full_level_detect
from .torsion import TorsionData, rational_torsion
