"""Integer programming model for safe seating over one or more shows.

Binary ``y`` variables exist only for families that fit inside the theatre.
Rows come in seven classes: per-cell trapezoid packing (``safe``), per-seat
reuse across shows (``reuse``), size counts (``count``), the two profile
rows (``proflo``/``profhi``), clique cuts (``cut``) and show-order symmetry
breaking (``sym``).  Coefficients are exact fractions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .arrangement import Placement, SeatingPlan, TargetProfile, counts
from .layout import Seat, Theatre

CLASS_ORDER = {"safe": 0, "reuse": 1, "count": 2, "proflo": 3, "profhi": 4, "cut": 5, "sym": 6}
PACKING_CLASSES = ("safe", "reuse", "cut")


def _num(x: int) -> str:
    return f"m{-x}" if x < 0 else str(x)


def y_name(p: Placement) -> str:
    return f"y_r{_num(p.r)}_s{_num(p.s)}_t{p.t}_v{p.v}"


def n_name(t: int) -> str:
    return f"n_t{t}"


@dataclass(frozen=True)
class Constraint:
    name: str
    kind: str
    coeffs: tuple[tuple[str, Fraction], ...]
    sense: str
    rhs: Fraction
    key: tuple = ()

    def lhs(self, point: Mapping[str, Fraction]) -> Fraction:
        return sum((c * Fraction(point.get(var, 0)) for var, c in self.coeffs), Fraction(0))

    def satisfied(self, point: Mapping[str, Fraction]) -> bool:
        lhs = self.lhs(point)
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.coeffs)


@dataclass(frozen=True)
class CliqueCut:
    anchor: Seat
    v: int
    members: tuple[Placement, ...]

    @property
    def X(self) -> frozenset[Seat]:
        r, s = self.anchor
        return frozenset({(r, s), (r + 1, s - 1), (r + 1, s)})


@dataclass(frozen=True)
class IlpModel:
    theatre: Theatre
    sizes: tuple[int, ...]
    profile: TargetProfile
    shows: int
    placements: tuple[Placement, ...]
    constraints: tuple[Constraint, ...] = ()
    cuts: tuple[CliqueCut, ...] = ()
    cells: tuple[Seat, ...] = field(default=(), compare=False)

    @property
    def objective(self) -> dict[str, Fraction]:
        return {n_name(t): Fraction(t) for t in self.sizes}

    @property
    def y_names(self) -> list[str]:
        return [y_name(p) for p in self.placements]

    def rows(self, kind: str) -> list[Constraint]:
        return [c for c in self.constraints if c.kind == kind]

    def with_constraints(self, extra: Iterable[Constraint], cuts: Iterable[CliqueCut] = ()) -> "IlpModel":
        merged = sorted((*self.constraints, *extra), key=lambda c: (CLASS_ORDER[c.kind], c.key, c.name))
        return replace(self, constraints=tuple(merged), cuts=self.cuts + tuple(cuts))

    def point(self, plan: SeatingPlan) -> dict[str, Fraction]:
        """Characteristic vector of ``plan`` (``y`` and ``n`` values)."""
        point = {y_name(p): Fraction(1) for p in plan.placements}
        n = counts(plan, self.sizes)
        point.update({n_name(t): Fraction(n.get(t, 0)) for t in self.sizes})
        return point

    def violated(self, point: Mapping[str, Fraction]) -> list[Constraint]:
        return [c for c in self.constraints if not c.satisfied(point)]

    def plan_feasible(self, plan: SeatingPlan) -> bool:
        known = set(self.placements)
        if plan.shows > self.shows or any(p not in known for p in plan.placements):
            return False
        return not self.violated(self.point(plan))


def _packing_row(name, kind, members: Iterable[Placement], key) -> Constraint:
    coeffs = tuple((y_name(p), Fraction(1)) for p in sorted(members))
    return Constraint(name, kind, coeffs, "<=", Fraction(1), key)


def candidate_placements(
    theatre: Theatre,
    sizes: Iterable[int],
    shows: int = 1,
    allow: Callable[[Placement], bool] | None = None,
) -> tuple[Placement, ...]:
    """Every family position that fits inside the theatre, in ``(v, r, s, t)`` order."""
    seats = theatre.seats
    out = []
    for v in range(1, shows + 1):
        for r, s in sorted(seats):
            for t in sorted(set(sizes)):
                if all((r, s + i) in seats for i in range(t)):
                    p = Placement(v, r, s, t)
                    if allow is None or allow(p):
                        out.append(p)
    return tuple(out)


def build_model(
    theatre: Theatre,
    sizes: Iterable[int],
    profile: TargetProfile,
    shows: int = 1,
    allow: Callable[[Placement], bool] | None = None,
) -> IlpModel:
    """Materialise the single-show model (``shows == 1``) or the consecutive-show model."""
    sizes = tuple(sorted(set(sizes)))
    if not sizes:
        raise ValueError("at least one family size must be allowed")
    if shows < 1:
        raise ValueError("shows must be at least 1")
    T = theatre.trapezoid
    placements = candidate_placements(theatre, sizes, shows, allow)
    cells = tuple(sorted(theatre.expanded))

    cover: dict[tuple[int, Seat], list[Placement]] = {}
    occupy: dict[Seat, list[Placement]] = {}
    for p in placements:
        for cell in p.zone(T):
            cover.setdefault((p.v, cell), []).append(p)
        for seat in p.seats:
            occupy.setdefault(seat, []).append(p)

    rows: list[Constraint] = []
    for v in range(1, shows + 1):
        for r, s in cells:
            members = cover.get((v, (r, s)))
            if members:
                rows.append(_packing_row(f"safe_v{v}_r{_num(r)}_s{_num(s)}", "safe", members, (v, r, s)))
    if shows > 1:
        for r, s in sorted(theatre.seats):
            members = occupy.get((r, s))
            if members:
                rows.append(_packing_row(f"reuse_r{_num(r)}_s{_num(s)}", "reuse", members, (0, r, s)))

    for t in sizes:
        terms = [(y_name(p), Fraction(1)) for p in placements if p.t == t]
        terms.append((n_name(t), Fraction(-1)))
        rows.append(Constraint(f"count_t{t}", "count", tuple(terms), "=", Fraction(0), (t,)))

    eps = profile.epsilon
    for kind, sense, sign in (("proflo", ">=", -1), ("profhi", "<=", 1)):
        for t in sizes:
            share = profile.share(t) + sign * eps
            terms = []
            for u in sizes:
                coef = (1 if u == t else 0) - share
                if coef:
                    terms.append((n_name(u), coef))
            rows.append(Constraint(f"{kind}_t{t}", kind, tuple(terms), sense, Fraction(0), (t,)))

    model = IlpModel(theatre, sizes, profile, shows, placements, cells=cells)
    return model.with_constraints(rows)


def clique_cuts(model: IlpModel) -> list[CliqueCut]:
    """One cut per L-shaped seat triple inside the theatre and per show."""
    theatre = model.theatre
    T = theatre.trapezoid
    zones = {p: p.zone(T) for p in model.placements}
    cuts = []
    for v in range(1, model.shows + 1):
        show = [p for p in model.placements if p.v == v]
        for r, s in sorted(theatre.seats):
            X = {(r, s), (r + 1, s - 1), (r + 1, s)}
            if not X <= theatre.seats:
                continue
            members = tuple(p for p in show if len(zones[p] & X) >= 2)
            if members:
                cuts.append(CliqueCut((r, s), v, members))
    return cuts


def add_clique_cuts(model: IlpModel, theatre: Theatre | None = None) -> IlpModel:
    cuts = clique_cuts(model)
    rows = [
        _packing_row(f"cut_v{c.v}_r{_num(c.anchor[0])}_s{_num(c.anchor[1])}", "cut", c.members, (c.v, *c.anchor))
        for c in cuts
    ]
    return model.with_constraints(rows, cuts)


def _ident(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_]", "_", name)


def add_symmetry_breaking(model: IlpModel, theatre: Theatre | None = None) -> IlpModel:
    """Per segment: a later show may start a family at a seat only after an
    earlier show started one at a lexicographically smaller seat."""
    if model.shows < 2:
        return model
    theatre = model.theatre
    by_start: dict[tuple[int, Seat], list[Placement]] = {}
    for p in model.placements:
        by_start.setdefault((p.v, (p.r, p.s)), []).append(p)
    rows = []
    for seg in theatre.segments:
        seg_seats = sorted(seg.seats)
        for v2 in range(2, model.shows + 1):
            for idx, (r, s) in enumerate(seg_seats):
                left = by_start.get((v2, (r, s)), [])
                if not left:
                    continue
                for v in range(1, v2):
                    right = [p for seat in seg_seats[:idx] for p in by_start.get((v, seat), [])]
                    terms = [(y_name(p), Fraction(1)) for p in sorted(left)]
                    terms += [(y_name(p), Fraction(-1)) for p in sorted(right)]
                    name = f"sym_{_ident(seg.name)}_v{v}_r{_num(r)}_s{_num(s)}_vv{v2}"
                    rows.append(Constraint(name, "sym", tuple(terms), "<=", Fraction(0), (v, r, s, v2, seg.name)))
    return model.with_constraints(rows)


def _fmt_coef(c: Fraction) -> str:
    c = abs(c)
    if c.denominator == 1:
        return str(c.numerator)
    d = c.denominator
    for prime in (2, 5):
        while d % prime == 0:
            d //= prime
    if d == 1:
        text = f"{float(c):.15f}".rstrip("0")
        return text
    return repr(float(c))


def _expr(coeffs: Iterable[tuple[str, Fraction]], fallback: str, per_line: int = 6) -> str:
    parts = []
    for i, (var, c) in enumerate(coeffs):
        sign = "-" if c < 0 else "+"
        term = f"{_fmt_coef(c)} {var}"
        parts.append(f"- {term}" if i == 0 and sign == "-" else term if i == 0 else f"{sign} {term}")
    lines = [" ".join(parts[i : i + per_line]) for i in range(0, len(parts), per_line)]
    return "\n   ".join(lines) if lines else f"0 {fallback}"


def emit_lp(model: IlpModel) -> str:
    """LP-format text; identical models give identical bytes."""
    fallback = n_name(model.sizes[0])
    objective = [(n_name(t), Fraction(t)) for t in model.sizes]
    out = ["\\ safe seating model", "Maximize", " obj: " + _expr(objective, fallback), "Subject To"]
    for c in model.constraints:
        rhs = _fmt_coef(c.rhs) if c.rhs >= 0 else "-" + _fmt_coef(c.rhs)
        out.append(f" {c.name}: {_expr(c.coeffs, fallback)} {c.sense} {rhs}")
    out.append("Bounds")
    out.extend(f" {n_name(t)} >= 0" for t in model.sizes)
    out.append("Generals")
    out.extend(f" {n_name(t)}" for t in model.sizes)
    out.append("Binaries")
    out.extend(f" {name}" for name in model.y_names)
    out.append("End")
    return "\n".join(out) + "\n"


def parse_lp_sections(text: str) -> dict[str, list[str]]:
    """Split LP text into its sections (continuation lines are joined)."""
    sections: dict[str, list[str]] = {}
    current = None
    headers = {"Maximize", "Subject To", "Bounds", "Generals", "Binaries", "End"}
    for raw in text.splitlines():
        if raw.startswith("\\"):
            continue
        if raw.strip() in headers:
            current = raw.strip()
            sections.setdefault(current, [])
            continue
        if current is None or not raw.strip():
            continue
        if raw.startswith("   ") and sections[current]:
            sections[current][-1] += " " + raw.strip()
        else:
            sections[current].append(raw.strip())
    return sections
