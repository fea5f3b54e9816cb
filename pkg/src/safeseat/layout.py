"""Theatres as segmented seat sets, and the line-oriented layout file format.

Layout files look like::

    geometry a=0.51 b=0.95 c=1.5
    segment stalls
    row 0: 1-6
    row 1: 1-3,5-7   # a gap for an aisle
    segment balcony
    row 4: 0-9 offset=0.25

Seat numbers are already in straight-line coordinates.  The optional
``offset=`` annotation is carried along for rendering only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import groupby
from typing import Iterable

from .geometry import (
    STANDARD_GEOMETRY,
    GeometryParams,
    Offset,
    OffsetSet,
    forbidden_zone,
    minkowski_sum,
    trapezoid_for,
)

Seat = tuple[int, int]


class LayoutError(ValueError):
    """Malformed or inconsistent layout input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Segment:
    name: str
    seats: frozenset[Seat]

    def __post_init__(self):
        if not self.seats:
            raise LayoutError(f"segment {self.name!r} has no seats")


@dataclass(frozen=True)
class Theatre:
    segments: tuple[Segment, ...]
    geometry: GeometryParams = STANDARD_GEOMETRY
    half_zone: OffsetSet | None = None
    row_offsets: tuple[tuple[int, float], ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.segments:
            raise LayoutError("theatre has no seats")
        seen: dict[Seat, str] = {}
        names = set()
        for seg in self.segments:
            if seg.name in names:
                raise LayoutError(f"duplicate segment name {seg.name!r}")
            names.add(seg.name)
            for seat in seg.seats:
                if seat in seen:
                    raise LayoutError(f"seat {seat} appears in segments {seen[seat]!r} and {seg.name!r}")
                seen[seat] = seg.name

    @cached_property
    def seats(self) -> frozenset[Seat]:
        return frozenset().union(*(seg.seats for seg in self.segments))

    @cached_property
    def segment_of(self) -> dict[Seat, str]:
        return {seat: seg.name for seg in self.segments for seat in seg.seats}

    @cached_property
    def trapezoid(self) -> OffsetSet:
        return trapezoid_for(self.geometry, self.half_zone)

    @cached_property
    def forbidden(self) -> OffsetSet:
        return forbidden_zone(self.geometry)

    @cached_property
    def expanded(self) -> frozenset[Seat]:
        """``S + T`` for the theatre's own trapezoid."""
        return minkowski_sum(self.seats, self.trapezoid)

    @cached_property
    def rim(self) -> frozenset[Seat]:
        return self.expanded - self.seats

    def __len__(self) -> int:
        return len(self.seats)

    @property
    def rows(self) -> list[int]:
        return sorted({r for r, _ in self.seats})


def virtual_rim(theatre: Theatre, T: Iterable[Offset] | None = None) -> frozenset[Seat]:
    """Virtual seats ``(S + T) \\ S`` just outside the theatre."""
    if T is None:
        return theatre.rim
    T = frozenset(T)
    if not T:
        raise ValueError("trapezoid must be nonempty")
    return minkowski_sum(theatre.seats, T) - theatre.seats


def expanded_size(theatre: Theatre, T: Iterable[Offset] | None = None) -> int:
    """``|S + T|``."""
    if T is None:
        return len(theatre.expanded)
    return len(minkowski_sum(theatre.seats, T))


def from_seats(
    seats: Iterable[Seat],
    geometry: GeometryParams = STANDARD_GEOMETRY,
    name: str = "main",
    half_zone: OffsetSet | None = None,
) -> Theatre:
    return Theatre((Segment(name, frozenset(seats)),), geometry, half_zone)


def make_grid(rows: int, cols: int, geometry: GeometryParams = STANDARD_GEOMETRY, first_seat: int = 0) -> Theatre:
    if rows < 1 or cols < 1:
        raise ValueError(f"grid dimensions must be positive, got {rows}x{cols}")
    return from_seats(((r, first_seat + s) for r in range(rows) for s in range(cols)), geometry)


def make_square(k: int, geometry: GeometryParams = STANDARD_GEOMETRY) -> Theatre:
    """``k`` rows of ``k`` seats, rows and seats numbered from 0."""
    if k < 1:
        raise ValueError(f"square theatre side must be positive, got {k}")
    return make_grid(k, k, geometry)


_GEOMETRY_RE = re.compile(r"^geometry\s+(.*)$")
_SEGMENT_RE = re.compile(r"^segment\s+([A-Za-z0-9_.\-]+)$")
_ROW_RE = re.compile(r"^row\s+(-?\d+)\s*:\s*(.+?)(?:\s+offset=(\S+))?$")
_RUN_RE = re.compile(r"^(-?\d+)(?:-(-?\d+))?$")


def _parse_geometry(text: str, lineno: int) -> GeometryParams:
    values = {}
    for item in text.split():
        key, sep, value = item.partition("=")
        if not sep or key not in ("a", "b", "c") or key in values:
            raise LayoutError(f"bad geometry item {item!r}", lineno)
        try:
            values[key] = float(value)
        except ValueError:
            raise LayoutError(f"bad number {value!r}", lineno) from None
    if set(values) != {"a", "b", "c"}:
        raise LayoutError("geometry needs a=, b= and c=", lineno)
    try:
        return GeometryParams(**values)
    except ValueError as exc:
        raise LayoutError(str(exc), lineno) from None


def _parse_runs(text: str, lineno: int) -> list[int]:
    seats: list[int] = []
    last = None
    for chunk in text.split(","):
        m = _RUN_RE.match(chunk.strip())
        if not m:
            raise LayoutError(f"bad seat run {chunk.strip()!r}", lineno)
        lo = int(m.group(1))
        hi = int(m.group(2)) if m.group(2) is not None else lo
        if hi < lo:
            raise LayoutError(f"descending run {lo}-{hi}", lineno)
        if last is not None and lo <= last:
            raise LayoutError("runs within a row must be disjoint and ascending", lineno)
        seats.extend(range(lo, hi + 1))
        last = hi
    return seats


def parse_layout(text: str) -> Theatre:
    """Parse layout text into a :class:`Theatre`; raises :class:`LayoutError`."""
    geometry = None
    segments: list[tuple[str, list[Seat]]] = []
    owner: dict[Seat, str] = {}
    offsets: dict[int, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if geometry is None:
            m = _GEOMETRY_RE.match(line)
            if not m:
                raise LayoutError("first statement must be 'geometry a=.. b=.. c=..'", lineno)
            geometry = _parse_geometry(m.group(1), lineno)
            continue
        m = _SEGMENT_RE.match(line)
        if m:
            name = m.group(1)
            if any(name == seg for seg, _ in segments):
                raise LayoutError(f"segment {name!r} declared twice", lineno)
            segments.append((name, []))
            continue
        m = _ROW_RE.match(line)
        if m:
            if not segments:
                raise LayoutError("row before any segment", lineno)
            r = int(m.group(1))
            name, seats = segments[-1]
            for s in _parse_runs(m.group(2), lineno):
                if (r, s) in owner:
                    raise LayoutError(f"duplicate seat ({r}, {s}) already in segment {owner[(r, s)]!r}", lineno)
                owner[(r, s)] = name
                seats.append((r, s))
            if m.group(3) is not None:
                try:
                    offsets[r] = float(m.group(3))
                except ValueError:
                    raise LayoutError(f"bad offset {m.group(3)!r}", lineno) from None
            continue
        raise LayoutError(f"unrecognised statement {line!r}", lineno)
    if geometry is None:
        raise LayoutError("empty layout: no geometry line")
    if not owner:
        raise LayoutError("empty theatre: no seats declared")
    for name, seats in segments:
        if not seats:
            raise LayoutError(f"segment {name!r} has no seats")
    return Theatre(
        tuple(Segment(name, frozenset(seats)) for name, seats in segments),
        geometry,
        row_offsets=tuple(sorted(offsets.items())),
    )


def _runs(values: list[int]) -> list[tuple[int, int]]:
    runs = []
    for _, grp in groupby(enumerate(sorted(values)), key=lambda p: p[1] - p[0]):
        grp = [v for _, v in grp]
        runs.append((grp[0], grp[-1]))
    return runs


def format_layout(theatre: Theatre) -> str:
    """Canonical layout text; ``parse_layout(format_layout(t))`` reproduces ``t``."""
    g = theatre.geometry
    lines = [f"geometry a={g.a!r} b={g.b!r} c={g.c!r}"]
    offsets = dict(theatre.row_offsets)
    for seg in theatre.segments:
        lines.append(f"segment {seg.name}")
        by_row: dict[int, list[int]] = {}
        for r, s in seg.seats:
            by_row.setdefault(r, []).append(s)
        for r in sorted(by_row):
            runs = ",".join(f"{lo}-{hi}" for lo, hi in _runs(by_row[r]))
            suffix = f" offset={offsets[r]!r}" if r in offsets else ""
            lines.append(f"row {r}: {runs}{suffix}")
    return "\n".join(lines) + "\n"


def with_geometry(theatre: Theatre, geometry: GeometryParams) -> Theatre:
    """Same seats under different distance parameters."""
    if geometry == theatre.geometry:
        return theatre
    return Theatre(theatre.segments, geometry, None, theatre.row_offsets)
