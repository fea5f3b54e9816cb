"""Family placements, seating plans, target profiles and their validity checks."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .geometry import OffsetSet, family_zone, shift
from .layout import Seat, Theatre

FamilyCounts = dict[int, int]


def to_fraction(value) -> Fraction:
    """Exact fraction; floats go through their shortest repr so 0.18 stays 18/100."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True, order=True)
class Placement:
    """A family of ``t`` people in row ``r`` on seats ``s..s+t-1`` during show ``v``."""

    v: int
    r: int
    s: int
    t: int

    def __post_init__(self):
        if self.t < 1:
            raise ValueError(f"family size must be positive, got {self.t}")
        if self.v < 1:
            raise ValueError(f"show index is 1-based, got {self.v}")

    @property
    def seats(self) -> frozenset[Seat]:
        return frozenset((self.r, self.s + i) for i in range(self.t))

    def zone(self, base: OffsetSet) -> frozenset[Seat]:
        """``base`` widened to the family and moved to its position."""
        return shift(family_zone(base, self.t), (self.r, self.s))


def place(r: int, s: int, t: int, v: int = 1) -> Placement:
    return Placement(v, r, s, t)


@dataclass(frozen=True)
class SeatingPlan:
    placements: tuple[Placement, ...] = ()
    shows: int = 1

    def __post_init__(self):
        object.__setattr__(self, "placements", tuple(sorted(set(self.placements))))
        if self.shows < 1:
            raise ValueError("a plan needs at least one show")
        for p in self.placements:
            if p.v > self.shows:
                raise ValueError(f"{p} refers to show {p.v} but the plan has {self.shows} show(s)")

    def show(self, v: int) -> tuple[Placement, ...]:
        return tuple(p for p in self.placements if p.v == v)

    @property
    def persons(self) -> int:
        return sum(p.t for p in self.placements)

    def __len__(self):
        return len(self.placements)

    def relabel(self, mapping: Mapping[int, int]) -> "SeatingPlan":
        return SeatingPlan(tuple(Placement(mapping[p.v], p.r, p.s, p.t) for p in self.placements), self.shows)


@dataclass(frozen=True)
class TargetProfile:
    """Target share ``p[t]`` per family size, enforced within ``epsilon``."""

    p: Mapping[int, Fraction]
    epsilon: Fraction = Fraction(1, 50)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        p = {int(t): to_fraction(v) for t, v in dict(self.p).items()}
        eps = to_fraction(self.epsilon)
        object.__setattr__(self, "p", dict(sorted(p.items())))
        object.__setattr__(self, "epsilon", eps)
        if not p:
            raise ValueError("profile must name at least one family size")
        for t, v in p.items():
            if t < 1:
                raise ValueError(f"family size must be positive, got {t}")
            if not 0 <= v <= 1:
                raise ValueError(f"p_{t} = {v} outside [0, 1]")
        if abs(float(sum(p.values())) - 1) > 1e-9:
            raise ValueError(f"profile fractions sum to {float(sum(p.values()))}, expected 1")
        if not 0 <= eps <= 1:
            raise ValueError(f"epsilon {eps} outside [0, 1]")

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(self.p)

    def share(self, t: int) -> Fraction:
        return self.p.get(t, Fraction(0))

    def with_epsilon(self, epsilon) -> "TargetProfile":
        return TargetProfile(self.p, epsilon, self.name)

    def restricted(self, sizes: Iterable[int]) -> "TargetProfile":
        return TargetProfile({t: self.share(t) for t in sizes}, self.epsilon, self.name)

    @classmethod
    def uniform(cls, sizes: Iterable[int], epsilon=Fraction(1)) -> "TargetProfile":
        sizes = sorted(set(sizes))
        return cls({t: Fraction(1, len(sizes)) for t in sizes}, epsilon)


PRESET_PROFILES = {
    "mge1": {1: "0.18", 2: "0.7", 3: "0.06", 4: "0.06"},
    "mge2": {1: "0", 2: "1", 3: "0", 4: "0"},
    "mge3": {1: "0.2", 2: "0.8", 3: "0", 4: "0"},
    "mge4": {1: "0", 2: "0.5", 3: "0", 4: "0.5"},
}
DEFAULT_EPSILON = Fraction(1, 50)


def preset_profile(name: str, epsilon=DEFAULT_EPSILON) -> TargetProfile:
    try:
        shares = PRESET_PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown profile preset {name!r}; choose from {', '.join(PRESET_PROFILES)}") from None
    return TargetProfile({t: Fraction(v) for t, v in shares.items()}, epsilon, name)


def is_arrangement(plan: SeatingPlan, theatre: Theatre) -> bool:
    seats = theatre.seats
    used: set[tuple[int, Seat]] = set()
    for p in plan.placements:
        for seat in p.seats:
            if seat not in seats or (p.v, seat) in used:
                return False
            used.add((p.v, seat))
    return True


def is_safe_zones(plan: SeatingPlan, theatre: Theatre, F: OffsetSet | None = None) -> bool:
    """No member of a family sits in another family's forbidden zone (same show)."""
    F = theatre.forbidden if F is None else F
    for v in range(1, plan.shows + 1):
        fams = plan.show(v)
        zones = [p.zone(F) for p in fams]
        for i, a in enumerate(fams):
            for j, b in enumerate(fams):
                if i != j and a.seats & zones[j]:
                    return False
    return True


def is_safe_trapezoids(plan: SeatingPlan, theatre: Theatre, T: OffsetSet | None = None) -> bool:
    """Family trapezoids of each show are pairwise disjoint."""
    T = theatre.trapezoid if T is None else T
    for v in range(1, plan.shows + 1):
        covered: set[Seat] = set()
        for p in plan.show(v):
            cells = p.zone(T)
            if covered & cells:
                return False
            covered |= cells
    return True


def multi_show_valid(plan: SeatingPlan, theatre: Theatre | None = None) -> bool:
    """Each seat is used in at most one show."""
    owner: dict[Seat, int] = {}
    for p in plan.placements:
        for seat in p.seats:
            if owner.setdefault(seat, p.v) != p.v:
                return False
    return True


def counts(plan: SeatingPlan, sizes: Iterable[int] = ()) -> FamilyCounts:
    """Family counts aggregated over all shows."""
    n = Counter(p.t for p in plan.placements)
    for t in sizes:
        n.setdefault(t, 0)
    return dict(sorted(n.items()))


def density(plan: SeatingPlan, theatre: Theatre) -> Fraction:
    return Fraction(plan.persons, len(theatre.seats))


def realized_profile(n: Mapping[int, int]) -> dict[int, Fraction]:
    total = sum(n.values())
    if total == 0:
        return {}
    return {t: Fraction(c, total) for t, c in n.items() if c}


def profile_satisfied(n: Mapping[int, int], profile: TargetProfile, sizes: Iterable[int] | None = None) -> bool:
    """Both share inequalities hold for every size, in exact arithmetic."""
    sizes = set(profile.sizes if sizes is None else sizes) | {t for t, c in n.items() if c}
    total = sum(n.get(t, 0) for t in sizes)
    eps = profile.epsilon
    for t in sizes:
        nt = n.get(t, 0)
        p = profile.share(t)
        if nt < (p - eps) * total or nt > (p + eps) * total:
            return False
    return True


_PLAN_RE = re.compile(r"^show=(\d+)\s+row=(-?\d+)\s+seat=(-?\d+)\s+size=(\d+)$")


def format_plan(plan: SeatingPlan) -> str:
    return "".join(f"show={p.v} row={p.r} seat={p.s} size={p.t}\n" for p in plan.placements)


def parse_plan(text: str, shows: int | None = None) -> SeatingPlan:
    placements = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _PLAN_RE.match(line)
        if not m:
            raise ValueError(f"line {lineno}: expected 'show=<v> row=<r> seat=<s> size=<t>', got {line!r}")
        v, r, s, t = map(int, m.groups())
        placements.append(Placement(v, r, s, t))
    k = max([p.v for p in placements], default=1)
    return SeatingPlan(tuple(placements), max(k, shows or 1))


def parse_profile(text: str) -> TargetProfile:
    """Profile file: ``epsilon=<f>`` header then ``t=<size> p=<fraction>`` lines."""
    eps = None
    shares: dict[int, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"^epsilon\s*=\s*(\S+)$", line)
        if m:
            if eps is not None:
                raise ValueError(f"line {lineno}: epsilon given twice")
            eps = Fraction(m.group(1))
            continue
        m = re.match(r"^t\s*=\s*(\d+)\s+p\s*=\s*(\S+)$", line)
        if not m:
            raise ValueError(f"line {lineno}: expected 't=<size> p=<fraction>', got {line!r}")
        t = int(m.group(1))
        if t in shares:
            raise ValueError(f"line {lineno}: size {t} listed twice")
        shares[t] = Fraction(m.group(2))
    if eps is None:
        raise ValueError("profile file lacks an 'epsilon=' header")
    return TargetProfile(shares, eps)


def format_profile(profile: TargetProfile) -> str:
    def dec(x: Fraction) -> str:
        return str(float(x)) if x.denominator != 1 else str(x.numerator)

    return f"epsilon={dec(profile.epsilon)}\n" + "".join(f"t={t} p={dec(v)}\n" for t, v in profile.p.items())
