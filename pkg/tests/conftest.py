"""Shared fixtures: a recorder for every plan the solvers return, and strategies."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

import safeseat.solver as solver_mod
from safeseat.arrangement import Placement, SeatingPlan
from safeseat.layout import from_seats, make_grid

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# (plan, theatre) for every plan any solver returned during the session
PRODUCED: list = []
_finish = solver_mod._finish


def _recording_finish(plan, theatre, config, status, nodes):
    PRODUCED.append((plan, theatre))
    return _finish(plan, theatre, config, status, nodes)


solver_mod._finish = _recording_finish


def pytest_collection_modifyitems(items):
    """Tests marked ``run_last`` see plans recorded by the whole session."""
    last = [i for i in items if i.get_closest_marker("run_last")]
    items[:] = [i for i in items if not i.get_closest_marker("run_last")] + last


def pytest_configure(config):
    config.addinivalue_line("markers", "run_last: run after every other test")
    config.addinivalue_line("markers", "criterion(n): acceptance criterion checked by the test")


# acceptance criterion -> [(test name, outcome)] and free-form notes
ACCEPTANCE: dict[int, list] = {}
ACCEPTANCE_NOTES: dict[int, list] = {}
ACCEPTANCE_COUNT = 11


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        status = "xfail" if hasattr(rep, "wasxfail") else rep.outcome
        ACCEPTANCE.setdefault(marker.args[0], []).append((item.name, status))


@pytest.fixture
def note(request):
    """Attach a one-line detail to the acceptance report of the test's criterion."""
    marker = request.node.get_closest_marker("criterion")

    def add(text: str) -> None:
        ACCEPTANCE_NOTES.setdefault(marker.args[0], []).append(text)

    return add


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, ACCEPTANCE_COUNT + 1):
        results = ACCEPTANCE.get(n)
        if not results:
            terminalreporter.write_line(f"criterion {n:2d}: NOT RUN")
            continue
        bad = [f"{name} {status}" for name, status in results if status != "passed"]
        verdict = "FAIL" if bad else "PASS"
        detail = "; ".join(ACCEPTANCE_NOTES.get(n, []) + bad)
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}" + (f" | {detail}" if detail else ""))


def small_layouts(seed: int = 7, holed: int = 20, rows: int = 3, cols: int = 6):
    """All full grids up to ``rows x cols`` plus ``holed`` seeded random subsets."""
    rng = random.Random(seed)
    out = [make_grid(r, c) for r in range(1, rows + 1) for c in range(1, cols + 1)]
    cells = [(r, s) for r in range(rows) for s in range(cols)]
    while len(out) < rows * cols + holed:
        seats = [x for x in cells if rng.random() > 0.3]
        if seats and len(seats) < len(cells):
            out.append(from_seats(seats))
    return out


@st.composite
def seat_sets(draw, max_rows=6, max_cols=10, min_seats=1):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    cells = [(r, s) for r in range(rows) for s in range(cols)]
    keep = draw(st.lists(st.booleans(), min_size=len(cells), max_size=len(cells)))
    seats = [c for c, k in zip(cells, keep) if k]
    if len(seats) < min_seats:
        seats = cells[:min_seats]
    return frozenset(seats)


@st.composite
def plans_in(draw, seats, shows=1, sizes=(1, 2, 3), max_families=6):
    """Random (not necessarily safe) plans whose families lie inside ``seats``."""
    fits = [
        Placement(v, r, s, t)
        for v in range(1, shows + 1)
        for r, s in sorted(seats)
        for t in sizes
        if all((r, s + i) in seats for i in range(t))
    ]
    if not fits:
        return SeatingPlan((), shows)
    chosen = draw(st.lists(st.sampled_from(fits), max_size=max_families, unique=True))
    return SeatingPlan(tuple(chosen), shows)


@pytest.fixture
def half():
    return Fraction(1, 2)
