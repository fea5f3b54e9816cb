"""Seat-lattice geometry: distances, forbidden zones and trapezoids.

Offsets are ``(dr, ds)`` integer pairs in the straight-line seat numbering,
where seat ``s`` of every row lies on one line and consecutive rows are
shifted by half a seat.  Offset sets are plain ``frozenset`` objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

Offset = tuple[int, int]
OffsetSet = frozenset[Offset]

BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class GeometryParams:
    """Seat pitch ``a``, row pitch ``b`` and safety distance ``c`` (meters)."""

    a: float = 0.51
    b: float = 0.95
    c: float = 1.5

    def __post_init__(self):
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError(f"geometry parameter {name} must be a positive finite number, got {value!r}")


class Regime(str, Enum):
    STANDARD = "1.5"
    SHORT = "1.0"

    @property
    def distance(self) -> float:
        return float(self.value)

    @classmethod
    def parse(cls, value) -> "Regime":
        if isinstance(value, Regime):
            return value
        text = str(value).strip().lower().removesuffix("m")
        for regime in cls:
            if float(text) == regime.distance:
                return regime
        raise ValueError(f"unknown distance regime {value!r}; expected 1.5 or 1.0")


STANDARD_GEOMETRY = GeometryParams(0.51, 0.95, 1.5)
SHORT_GEOMETRY = GeometryParams(0.51, 0.95, 1.0)

_TRAPEZOIDS = {
    Regime.STANDARD: frozenset({(0, -1), (0, 0), (0, 1), (1, -1), (1, 0)}),
    Regime.SHORT: frozenset({(0, 0), (0, 1), (1, 0)}),
}


def geometry_for(regime: Regime | str) -> GeometryParams:
    regime = Regime.parse(regime)
    return STANDARD_GEOMETRY if regime is Regime.STANDARD else SHORT_GEOMETRY


def offset_set(items: Iterable[Offset]) -> OffsetSet:
    return frozenset((int(dr), int(ds)) for dr, ds in items)


def seat_distance(params: GeometryParams, d: Offset) -> float:
    """Euclidean distance between two seats whose coordinates differ by ``d``."""
    dr, ds = d
    return math.hypot((ds + dr / 2) * params.a, dr * params.b)


def _inside(params: GeometryParams, d: Offset) -> bool:
    # seats at distance c (up to float noise) are allowed
    return seat_distance(params, d) < params.c - BOUNDARY_TOL


def forbidden_zone(params: GeometryParams) -> OffsetSet:
    """All offsets strictly closer than ``params.c`` to the origin seat."""
    max_dr = int(params.c // params.b) + 1
    zone = set()
    for dr in range(-max_dr, max_dr + 1):
        reach = params.c / params.a + abs(dr) / 2 + 1
        for ds in range(-int(reach) - 1, int(reach) + 2):
            if _inside(params, (dr, ds)):
                zone.add((dr, ds))
    return frozenset(zone)


def canonical_trapezoid(regime: Regime | str) -> OffsetSet:
    """The 5-seat trapezoid for 1.5 m or the 3-seat one for 1.0 m."""
    return _TRAPEZOIDS[Regime.parse(regime)]


def negate(zone: Iterable[Offset]) -> OffsetSet:
    return frozenset((-dr, -ds) for dr, ds in zone)


def shift(zone: Iterable[Offset], by: Offset) -> OffsetSet:
    r, s = by
    return frozenset((r + dr, s + ds) for dr, ds in zone)


def minkowski_sum(A: Iterable[Offset], B: Iterable[Offset]) -> OffsetSet:
    B = tuple(B)
    return frozenset((ar + br, as_ + bs) for ar, as_ in A for br, bs in B)


def family_zone(base: Iterable[Offset], t: int) -> OffsetSet:
    """Union of ``base`` shifted along the row by ``0..t-1`` seats."""
    if t < 1:
        raise ValueError(f"family size must be at least 1, got {t}")
    return minkowski_sum(((0, i) for i in range(t)), base)


def regime_of(params: GeometryParams) -> Regime | None:
    """The canonical regime whose forbidden zone matches ``params``, if any."""
    zone = forbidden_zone(params)
    for regime, trap in _TRAPEZOIDS.items():
        if minkowski_sum(trap, negate(trap)) == zone:
            return regime
    return None


def trapezoid_for(params: GeometryParams, half_zone: Iterable[Offset] | None = None) -> OffsetSet:
    """Return a trapezoid ``T`` with ``T + (-T)`` equal to the forbidden zone.

    For the two canonical zones the known trapezoid is returned.  Any other
    geometry needs a caller-supplied ``half_zone``, which is checked and
    rejected when it does not factor the zone.
    """
    zone = forbidden_zone(params)
    if half_zone is not None:
        candidate = offset_set(half_zone)
        if minkowski_sum(candidate, negate(candidate)) != zone:
            raise ValueError("half zone T does not satisfy T + (-T) == forbidden zone for this geometry")
        return candidate
    regime = regime_of(params)
    if regime is None:
        raise ValueError(
            f"forbidden zone of {params} ({len(zone)} offsets) matches no canonical trapezoid; "
            "supply a half zone explicitly"
        )
    return _TRAPEZOIDS[regime]
