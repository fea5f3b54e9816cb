import xml.etree.ElementTree as ET

from hypothesis import given, settings
from hypothesis import strategies as st

from safeseat.arrangement import Placement, SeatingPlan, is_safe_zones, place
from safeseat.layout import from_seats, make_grid, make_square
from safeseat.render import SHOW_COLORS, SeatState, classify, render_ascii, render_svg

from .conftest import plans_in, seat_sets

SVG = "{http://www.w3.org/2000/svg}"


def test_empty_plan():
    th = make_grid(3, 4)
    c = classify(th, SeatingPlan())
    assert c.count("free") == 12 and c.count("rim") == len(th.rim)
    assert c.count("occupied") == c.count("blocked") == 0


def test_pair_zone_on_grid():
    th = make_grid(5, 10)
    c = classify(th, SeatingPlan((place(2, 4, 2),)))
    assert c.count("occupied") == 2
    assert c.count("occupied") + c.count("blocked") == 16


def test_two_shows_colours():
    th = make_grid(3, 8)
    plan = SeatingPlan((place(0, 0, 2, 1), place(0, 2, 2, 2), place(2, 5, 1, 2)), 2)
    c = classify(th, plan)
    occ = {seat: s.show for seat, s in c.states.items() if s.kind == "occupied"}
    assert occ == {(0, 0): 1, (0, 1): 1, (0, 2): 2, (0, 3): 2, (2, 5): 2}
    assert SeatState("occupied", 1).fill == SHOW_COLORS[0] != SeatState("occupied", 2).fill
    assert SeatState("occupied", 7).fill == SHOW_COLORS[0]


def test_ascii_singleton_in_short_row():
    th = make_grid(1, 3)
    c = classify(th, SeatingPlan((place(0, 1, 1),)))
    flat = render_ascii(c, stagger=False).splitlines()
    assert flat[0] == "+x1x+"
    assert set(flat[1]) == {"+"}
    staggered = render_ascii(c).splitlines()
    assert staggered[0] == "+ x 1 x +"
    assert staggered[1].startswith(" +")


def test_ascii_deterministic():
    th = make_grid(4, 7)
    plan = SeatingPlan((place(0, 0, 2), place(2, 3, 3)))
    assert render_ascii(classify(th, plan)) == render_ascii(classify(th, plan))
    assert render_svg(classify(th, plan)) == render_svg(classify(th, plan))


def test_svg_square():
    c = classify(make_square(2), SeatingPlan((place(0, 0, 1),)))
    root = ET.fromstring(render_svg(c))
    circles = root.findall(f"{SVG}circle")
    kinds = [e.get("class") for e in circles]
    assert len([k for k in kinds if k != "rim"]) == 4
    assert kinds.count("rim") == len(make_square(2).rim)
    assert root.get("version") == "1.1"


def test_svg_positions_follow_stagger():
    th = make_grid(2, 2)
    root = ET.fromstring(render_svg(classify(th, SeatingPlan()), scale=100))
    pos = {}
    for e in root.findall(f"{SVG}circle"):
        title = e.find(f"{SVG}title").text
        r, s = int(title.split()[1]), int(title.split()[3].rstrip(":"))
        pos[(r, s)] = (float(e.get("cx")), float(e.get("cy")))
    dx = pos[(1, 0)][0] - pos[(0, 0)][0]
    dy = pos[(1, 0)][1] - pos[(0, 0)][1]
    assert abs(dx - 0.51 * 100 / 2) < 0.02 and abs(dy - 95) < 0.02


@settings(max_examples=60)
@given(st.data(), seat_sets(max_rows=4, max_cols=7), st.integers(1, 2))
def test_blocked_iff_singleton_unsafe(data, seats, shows):
    th = from_seats(seats)
    plan = data.draw(plans_in(seats, shows=shows, max_families=3))
    if not is_safe_zones(plan, th):
        return
    c = classify(th, plan)
    occupied = {seat for p in plan.placements for seat in p.seats}
    for seat in th.seats - occupied:
        unsafe = any(
            not is_safe_zones(SeatingPlan(plan.placements + (Placement(v, *seat, 1),), shows), th)
            for v in range(1, shows + 1)
        )
        assert (c.states[seat].kind == "blocked") == unsafe
    assert {s for s, st_ in c.states.items() if st_.kind == "rim"} == th.rim
