"""Maximum social-distance-safe theatre seating via trapezoid packing."""

from .arrangement import Placement, SeatingPlan, TargetProfile, preset_profile
from .geometry import GeometryParams, Regime, canonical_trapezoid, forbidden_zone
from .layout import Segment, Theatre, make_grid, make_square, parse_layout
from .solver import SolveConfig, SolveResult, brute_force, solve_alternating, solve_exact

__all__ = [
    "GeometryParams",
    "Placement",
    "Regime",
    "SeatingPlan",
    "Segment",
    "SolveConfig",
    "SolveResult",
    "TargetProfile",
    "Theatre",
    "brute_force",
    "canonical_trapezoid",
    "forbidden_zone",
    "make_grid",
    "make_square",
    "parse_layout",
    "preset_profile",
    "solve_alternating",
    "solve_exact",
]
__version__ = "0.1.0"
