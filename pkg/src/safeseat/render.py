"""ASCII and SVG seat maps."""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .arrangement import SeatingPlan
from .geometry import OffsetSet
from .layout import Seat, Theatre

SHOW_COLORS = ("#2ca02c", "#1f77b4", "#ff7f0e", "#9467bd", "#17becf", "#8c564b")
BLOCKED_COLOR = "#d62728"
FREE_COLOR = "#ffffff"


@dataclass(frozen=True, order=True)
class SeatState:
    kind: str
    show: int = 0

    OCCUPIED = "occupied"
    BLOCKED = "blocked"
    FREE = "free"
    RIM = "rim"

    @property
    def glyph(self) -> str:
        if self.kind == self.OCCUPIED:
            return str(self.show) if self.show < 10 else "#"
        return {self.BLOCKED: "x", self.FREE: ".", self.RIM: "+"}[self.kind]

    @property
    def fill(self) -> str:
        if self.kind == self.OCCUPIED:
            return SHOW_COLORS[(self.show - 1) % len(SHOW_COLORS)]
        return {self.BLOCKED: BLOCKED_COLOR, self.FREE: FREE_COLOR, self.RIM: "none"}[self.kind]


FREE = SeatState(SeatState.FREE)
BLOCKED = SeatState(SeatState.BLOCKED)
RIM = SeatState(SeatState.RIM)


@dataclass(frozen=True)
class Classified:
    theatre: Theatre
    states: dict[Seat, SeatState]

    def count(self, kind: str) -> int:
        return sum(1 for s in self.states.values() if s.kind == kind)


def classify(theatre: Theatre, plan: SeatingPlan, F: OffsetSet | None = None) -> Classified:
    """State of every seat of the theatre and of its virtual rim."""
    F = theatre.forbidden if F is None else F
    states = {seat: FREE for seat in theatre.seats}
    states.update({seat: RIM for seat in theatre.rim})
    occupied = {}
    for p in plan.placements:
        for seat in p.seats:
            occupied[seat] = SeatState(SeatState.OCCUPIED, p.v)
    for p in plan.placements:
        for seat in p.zone(F):
            if seat in theatre.seats and seat not in occupied:
                states[seat] = BLOCKED
    states.update(occupied)
    return Classified(theatre, dict(sorted(states.items())))


def render_ascii(classified: Classified, stagger: bool = True) -> str:
    """One line per row, lowest row first; ``stagger`` shifts each row by half a seat."""
    states = classified.states
    if not states:
        return ""

    def col(r: int, s: int) -> int:
        return 2 * s + r if stagger else s

    base = min(col(r, s) for r, s in states)
    rows: dict[int, dict[int, str]] = {}
    for (r, s), state in states.items():
        rows.setdefault(r, {})[col(r, s) - base] = state.glyph
    lines = []
    for r in range(min(rows), max(rows) + 1):
        cells = rows.get(r, {})
        width = max(cells, default=-1) + 1
        lines.append("".join(cells.get(i, " ") for i in range(width)).rstrip())
    return "\n".join(lines) + "\n"


def render_svg(classified: Classified, scale: float = 40.0) -> str:
    """SVG 1.1 seat map at physical coordinates ``x = (s + r/2) a``, ``y = r b``."""
    g = classified.theatre.geometry
    states = classified.states
    radius = 0.4 * min(g.a, g.b) * scale
    margin = 2 * radius
    pts = {seat: ((seat[1] + seat[0] / 2) * g.a * scale, seat[0] * g.b * scale) for seat in states}
    xs = [x for x, _ in pts.values()] or [0.0]
    ys = [y for _, y in pts.values()] or [0.0]
    x0, y0 = min(xs) - margin, min(ys) - margin
    width = max(xs) - min(xs) + 2 * margin
    height = max(ys) - min(ys) + 2 * margin
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2f}" height="{height:.2f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">',
    ]
    for seat, state in states.items():
        x, y = pts[seat]
        stroke = "#000000" if state.kind == SeatState.RIM else "#555555"
        dash = ' stroke-dasharray="2,2"' if state.kind == SeatState.RIM else ""
        title = escape(f"row {seat[0]} seat {seat[1]}: {state.kind}" + (f" show {state.show}" if state.show else ""))
        out.append(
            f'  <circle cx="{x - x0:.2f}" cy="{y - y0:.2f}" r="{radius:.2f}" fill="{state.fill}" '
            f'stroke="{stroke}"{dash} class="{state.kind}"><title>{title}</title></circle>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
