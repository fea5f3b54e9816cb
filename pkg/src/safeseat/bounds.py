"""Closed-form capacity and density bounds, in exact rational arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Iterable, Mapping

from .arrangement import Placement, SeatingPlan, TargetProfile, counts, realized_profile
from .geometry import OffsetSet, Regime, canonical_trapezoid, family_zone, regime_of
from .layout import Theatre, expanded_size


def _trapezoid(regime_or_T) -> OffsetSet:
    if regime_or_T is None:
        return canonical_trapezoid(Regime.STANDARD)
    if isinstance(regime_or_T, (Regime, str)):
        return canonical_trapezoid(regime_or_T)
    return frozenset(regime_or_T)


def trapezoid_cost(t: int, regime_or_T=Regime.STANDARD) -> int:
    """Seats of ``S + T`` consumed by one family of size ``t``."""
    return len(family_zone(_trapezoid(regime_or_T), t))


def volume_lhs(n: Mapping[int, int], regime_or_T=Regime.STANDARD) -> int:
    return sum(trapezoid_cost(t, regime_or_T) * c for t, c in n.items() if c)


def volume_rhs(theatre: Theatre, T: OffsetSet | None = None) -> int:
    return expanded_size(theatre, T)


def volume_rhs_from_sizes(n_seats: int, rim: int) -> int:
    """``|S + T|`` from the seat count and the rim size."""
    return n_seats + rim


def volume_bound_holds(plan: SeatingPlan, theatre: Theatre) -> bool:
    """Per show, trapezoid volume never exceeds ``|S + T|``."""
    T = theatre.trapezoid
    rhs = volume_rhs(theatre)
    return all(volume_lhs(counts(SeatingPlan(plan.show(v), plan.shows)), T) <= rhs for v in range(1, plan.shows + 1))


def round_half_up(x, places: int = 2) -> Decimal:
    q = Decimal(1).scaleb(-places)
    return (Decimal(x.numerator) / Decimal(x.denominator)).quantize(q, rounding=ROUND_HALF_UP)


def show_decimal(x: Fraction, places: int = 2) -> str:
    """Table style: rounded half-up, trailing zeros kept only to 2 places."""
    return f"{round_half_up(x, places)}"


@dataclass(frozen=True)
class DensityReport:
    t: int
    d: Fraction
    regime: Regime
    variant: str = "full-rows"
    ratio: Fraction | None = None

    @property
    def reciprocal(self) -> Fraction:
        return 1 / self.d


def hilbert_density(t: int, regime=Regime.STANDARD) -> DensityReport:
    """Densest packing of families of size ``t`` in an unbounded theatre."""
    if t < 1:
        raise ValueError("family size must be positive")
    regime = Regime.parse(regime)
    return DensityReport(t, Fraction(t, trapezoid_cost(t, regime)), regime)


def alternating_density(t: int, regime=Regime.STANDARD) -> DensityReport:
    """Density when every occupied row is flanked by empty rows."""
    if t < 1:
        raise ValueError("family size must be positive")
    regime = Regime.parse(regime)
    # in-row spacing: two empty seats (1.5 m) or one (1.0 m) between families
    gap = 2 if regime is Regime.STANDARD else 1
    d = Fraction(t, 2 * (t + gap))
    return DensityReport(t, d, regime, "alternating-rows", d / hilbert_density(t, regime).d)


def weighted_density(p: Mapping[int, Fraction], regime_or_T=Regime.STANDARD) -> Fraction:
    """``D(p)``: share-weighted average of the per-size packing densities."""
    return sum((Fraction(v) * Fraction(t, trapezoid_cost(t, regime_or_T)) for t, v in p.items()), Fraction(0))


def _rim_ratio(theatre: Theatre, T: OffsetSet | None) -> Fraction:
    return Fraction(volume_rhs(theatre, T), len(theatre.seats))


def profile_density_bound(profile: TargetProfile | Mapping[int, Fraction], theatre: Theatre, T: OffsetSet | None = None) -> Fraction:
    """``D(p) * |S+T| / |S|`` for a declared profile or a raw share map."""
    p = profile.p if isinstance(profile, TargetProfile) else profile
    T = theatre.trapezoid if T is None else T
    return weighted_density(p, T) * _rim_ratio(theatre, T)


def realized_density_bound(plan: SeatingPlan, theatre: Theatre, T: OffsetSet | None = None) -> Fraction:
    """``D(p(A)) * |S+T| / |S|`` using the plan's own size distribution."""
    n = counts(plan)
    if not plan.placements:
        return Fraction(0)
    return profile_density_bound(realized_profile(n), theatre, T)


def volume_density_bound(plan: SeatingPlan, theatre: Theatre, T: OffsetSet | None = None) -> Fraction:
    """Density cap implied directly by the volume inequality, per show.

    Persons per consumed virtual seat is a ratio of sums, so it is bounded by
    ``persons / trapezoid volume`` rather than by the share-weighted average of
    per-size ratios; this form holds for every safe plan, mixed sizes included.
    """
    T = theatre.trapezoid if T is None else T
    rhs = volume_rhs(theatre, T)
    total = Fraction(0)
    for v in range(1, plan.shows + 1):
        n = counts(SeatingPlan(plan.show(v), plan.shows))
        vol = volume_lhs(n, T)
        if vol:
            total += Fraction(sum(t * c for t, c in n.items()), vol) * rhs
    return total / len(theatre.seats)


def hilbert_starts(t: int, r: int, regime=Regime.STANDARD) -> tuple[int, int]:
    """``(residue, period)`` of family start seats in row ``r`` of the lattice arrangement."""
    regime = Regime.parse(regime)
    period = trapezoid_cost(t, regime)
    step = t + 1 if regime is Regime.STANDARD else t
    return (step * r) % period, period


def hilbert_arrangement(t: int, k: int, regime=Regime.STANDARD, rows: Iterable[int] | None = None, cols: range | None = None) -> SeatingPlan:
    """Lattice arrangement of size-``t`` families restricted to the square theatre ``S^k``.

    The lattice is spanned by ``(2, -1)`` and ``(1, t + 1)`` (``(1, t)`` for the
    1.0 m trapezoid), whose family trapezoids tile the plane exactly.
    """
    if t < 1 or k < 1:
        raise ValueError("t and k must be positive")
    rows = range(k) if rows is None else rows
    cols = range(k) if cols is None else cols
    placements = []
    for r in rows:
        residue, period = hilbert_starts(t, r, regime)
        first = cols.start + (residue - cols.start) % period
        for s in range(first, cols.stop - t + 1, period):
            placements.append(Placement(1, r, s, t))
    return SeatingPlan(tuple(placements))


def square_density_bounds(t: int, k: int, regime=Regime.STANDARD) -> tuple[Fraction, Fraction]:
    """Lower ``d_t - t/k`` and upper ``d_t (1 + (3k+3)/k^2)`` density bounds on ``S^k``."""
    d = hilbert_density(t, regime).d
    return d - Fraction(t, k), d * (1 + Fraction(3 * k + 3, k * k))


def theatre_summary(theatre: Theatre) -> dict:
    rhs = volume_rhs(theatre)
    return {
        "seats": len(theatre.seats),
        "rim": rhs - len(theatre.seats),
        "expanded": rhs,
        "regime": regime_of(theatre.geometry),
    }
