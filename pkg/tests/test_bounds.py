from collections import Counter
from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from safeseat.arrangement import SeatingPlan, TargetProfile, is_safe_trapezoids, place, preset_profile
from safeseat.bounds import (
    alternating_density,
    hilbert_arrangement,
    hilbert_density,
    hilbert_starts,
    profile_density_bound,
    realized_density_bound,
    round_half_up,
    show_decimal,
    square_density_bounds,
    theatre_summary,
    trapezoid_cost,
    volume_bound_holds,
    volume_density_bound,
    volume_lhs,
    volume_rhs,
    volume_rhs_from_sizes,
    weighted_density,
)
from safeseat.arrangement import density
from safeseat.geometry import Regime, canonical_trapezoid, family_zone, shift
from safeseat.layout import from_seats, make_grid, make_square


def test_volume_examples():
    assert volume_lhs({2: 1}) == 7
    assert volume_lhs({1: 2, 4: 1}) == 2 * 5 + 11
    assert volume_rhs_from_sizes(400, 133) == 533
    assert volume_rhs_from_sizes(1250, 458) == 1708
    assert volume_rhs(make_square(3)) == 19


@pytest.mark.parametrize("t", range(1, 7))
def test_costs(t):
    assert trapezoid_cost(t) == 2 * t + 3
    assert trapezoid_cost(t, Regime.SHORT) == 2 * t + 1


def test_density_examples():
    d2 = hilbert_density(2)
    assert d2.d == Fraction(2, 7) and d2.reciprocal == Fraction(7, 2)
    assert show_decimal(d2.d) == "0.29"
    assert hilbert_density(1).d == Fraction(1, 5)
    assert hilbert_density(3, "1.0").d == Fraction(3, 7)
    a1 = alternating_density(1)
    assert a1.d == Fraction(1, 6) and show_decimal(a1.d) == "0.17" and round_half_up(100 * a1.ratio, 0) == 83
    a4 = alternating_density(4)
    assert a4.d == Fraction(1, 3) and round_half_up(100 * a4.ratio, 0) == 92
    assert alternating_density(2, "1.0").d == Fraction(1, 3)
    with pytest.raises(ValueError):
        hilbert_density(0)
    with pytest.raises(ValueError):
        alternating_density(0)


def test_round_half_up():
    assert round_half_up(Fraction(7, 8) * 100, 0) == Decimal("88")
    assert round_half_up(Fraction(1, 8), 2) == Decimal("0.13")


def test_density_monotone_below_half():
    ds = [hilbert_density(t).d for t in range(1, 18)]
    assert all(a < b < Fraction(1, 2) for a, b in zip(ds, ds[1:]))
    for t in range(1, 17):
        assert alternating_density(t).d < hilbert_density(t).d


def test_weighted_density():
    assert weighted_density({2: 1}) == Fraction(2, 7)
    mge4 = preset_profile("mge4")
    D = Fraction(1, 2) * Fraction(2, 7) + Fraction(1, 2) * Fraction(4, 11)
    assert weighted_density(mge4.p) == D
    sq = make_square(40)
    assert profile_density_bound(mge4, sq) == D * Fraction(40 * 40 + 3 * 40 + 1, 1600)


def test_rim_free_limit():
    pairs = TargetProfile({2: 1})
    for k in (5, 50, 400):
        sq = make_square(k)
        ratio = Fraction(volume_rhs(sq), len(sq.seats))
        assert profile_density_bound(pairs, sq) / ratio == Fraction(2, 7)
    assert profile_density_bound(pairs, make_square(400)) - Fraction(2, 7) < Fraction(1, 400)


def test_stated_density_bound_fails_for_mixed_sizes():
    # a singleton and a quad, far apart in one long row
    th = from_seats([(0, 0)] + [(0, s) for s in range(10, 14)])
    plan = SeatingPlan((place(0, 0, 1), place(0, 10, 4)))
    assert is_safe_trapezoids(plan, th)
    assert density(plan, th) == 1
    assert realized_density_bound(plan, th) < 1
    assert volume_density_bound(plan, th) >= 1


@pytest.mark.parametrize("t", [1, 2, 3, 4])
@pytest.mark.parametrize("regime", list(Regime))
def test_lattice_tiles_plane(t, regime):
    T = canonical_trapezoid(regime)
    period = trapezoid_cost(t, regime)
    cover = Counter()
    for r in range(-6, 7):
        residue, p = hilbert_starts(t, r, regime)
        assert p == period
        for s in range(residue - 5 * period, 40, period):
            cover.update(shift(family_zone(T, t), (r, s)))
    window = [(r, s) for r in range(-3, 4) for s in range(0, 20)]
    assert all(cover[c] == 1 for c in window)


@pytest.mark.parametrize("t, k", [(2, 25), (1, 5), (3, 30), (1, 8), (2, 8), (4, 12)])
def test_restricted_lattice(t, k):
    plan = hilbert_arrangement(t, k)
    sq = make_square(k)
    assert is_safe_trapezoids(plan, sq)
    assert volume_bound_holds(plan, sq)
    lo, hi = square_density_bounds(t, k)
    assert lo <= density(plan, sq) <= hi


def test_restricted_lattice_three():
    assert density(hilbert_arrangement(3, 30), make_square(30)) >= hilbert_density(3).d - Fraction(1, 10)


def test_summary():
    s = theatre_summary(make_square(3))
    assert s == {"seats": 9, "rim": 10, "expanded": 19, "regime": Regime.STANDARD}


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 12), st.integers(1, 4)), max_size=8))
def test_volume_bound_on_safe_random_plans(items):
    th = make_grid(5, 13)
    chosen = []
    covered = set()
    for r, s, t in items:
        p = place(r, s, t)
        if all((r, s + i) in th.seats for i in range(t)):
            z = p.zone(th.trapezoid)
            if not covered & z:
                chosen.append(p)
                covered |= z
    plan = SeatingPlan(tuple(chosen))
    assert volume_bound_holds(plan, th)
    assert density(plan, th) <= volume_density_bound(plan, th)
