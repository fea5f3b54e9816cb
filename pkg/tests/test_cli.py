import subprocess
import sys
from fractions import Fraction

import pytest

import safeseat.cli as cli
from safeseat.layout import format_layout, make_grid, make_square
from safeseat.solver import SolveResult


def write_layout(path, theatre):
    path.write_text(format_layout(theatre))
    return str(path)


@pytest.fixture
def sq8(tmp_path):
    return write_layout(tmp_path / "sq8.thl", make_square(8))


@pytest.fixture
def sq3(tmp_path):
    return write_layout(tmp_path / "sq3.thl", make_square(3))


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def field(out, key):
    for line in out.splitlines():
        if line.startswith(key + ":"):
            return line.split(":", 1)[1].strip()
    raise KeyError(key)


def rational(text):
    return Fraction(text.split("(")[1].rstrip(")"))


def test_solve_pairs_square(capsys, sq8):
    code, out, _ = run(capsys, "solve", "--layout", sq8, "--profile", "mge2", "--shows", "1")
    assert code == 0
    assert field(out, "status") == "optimal"
    d = rational(field(out, "density"))
    assert d <= Fraction(2, 7)
    assert d <= rational(field(out, "profile density bound"))
    assert "volume bound show 1:" in out and "ok" in field(out, "volume bound show 1")


def test_solve_two_shows(capsys, sq8):
    _, one, _ = run(capsys, "solve", "--layout", sq8, "--profile", "mge2")
    code, two, _ = run(capsys, "solve", "--layout", sq8, "--profile", "mge2", "--shows", "2")
    assert code == 0
    a, b = int(field(one, "objective")), int(field(two, "objective"))
    assert a < b <= 2 * a
    assert field(two, "persons per show") == "16 16"


def test_solve_alternating_reports_loss(capsys, tmp_path):
    layout = write_layout(tmp_path / "sq5.thl", make_square(5))
    code, out, _ = run(capsys, "solve", "--layout", layout, "--sizes", "2", "--epsilon", "1", "--shows", "2", "--alternating")
    assert code == 0
    full = int(field(out, "full-row objective").split()[0])
    alt = int(field(out, "objective"))
    assert alt < full
    loss = Fraction(field(out, "alternating loss").rstrip("%"))
    assert loss == round(100 * (1 - Fraction(alt, full)), 2)


def test_bounds_layout(capsys, sq3):
    code, out, _ = run(capsys, "bounds", "--layout", sq3)
    assert code == 0
    assert field(out, "volume rhs") == "19"
    assert field(out, "seats") == "9" and field(out, "rim") == "10"


@pytest.mark.parametrize("seats, rim, rhs", [(400, 133, 533), (1250, 458, 1708)])
def test_bounds_arithmetic(capsys, seats, rim, rhs):
    code, out, _ = run(capsys, "bounds", "--seats", seats, "--rim", rim)
    assert code == 0
    assert field(out, "expanded") == f"{seats} + {rim} = {rhs}"


def test_bounds_needs_input(capsys):
    code, _, err = run(capsys, "bounds", "--seats", "10")
    assert code == 1 and "error" in err


def test_hilbert(capsys):
    code, out, _ = run(capsys, "hilbert")
    assert code == 0
    assert "t=6: d_t 0.4, 1/d_t 2.5, alternating 0.38, ratio 94%" in out
    code, csv, _ = run(capsys, "hilbert", "--csv", "--distance", "1.0")
    assert csv.splitlines()[1] == "1,0.33,3,0.25,75"


def test_emit_lp(capsys, tmp_path, sq3):
    out_file = tmp_path / "m.lp"
    code, out, _ = run(capsys, "emit-lp", "--layout", sq3, "--sizes", "2", "--epsilon", "1", "--out", out_file)
    assert code == 0 and "6 binaries" in out
    text = out_file.read_text()
    assert text.startswith("\\ safe seating model\nMaximize\n obj: 2 n_t2\n")
    code, again, _ = run(capsys, "emit-lp", "--layout", sq3, "--sizes", "2", "--epsilon", "1")
    assert again == text


def test_round_trip_render(capsys, tmp_path, sq8):
    plan = tmp_path / "plan.txt"
    svg = tmp_path / "plan.svg"
    code, _, _ = run(capsys, "solve", "--layout", sq8, "--profile", "mge3", "--out", plan, "--render", "svg", "--render-out", svg)
    assert code == 0 and svg.read_text().startswith("<?xml")
    code, ascii_map, _ = run(capsys, "render", "--layout", sq8, "--plan", plan)
    assert code == 0 and "1" in ascii_map
    plan.write_text(plan.read_text() + "show=1 row=0 seat=1 size=1\n")
    code, _, err = run(capsys, "render", "--layout", sq8, "--plan", plan)
    assert code == 1 and "invalid" in err


def test_oracle_match(capsys, tmp_path):
    tiny = write_layout(tmp_path / "tiny.thl", make_grid(2, 5))
    code, out, _ = run(capsys, "oracle", "--layout", tiny, "--sizes", "1,2")
    assert code == 0 and out.strip().endswith("MATCH")


def test_oracle_mismatch_exit(capsys, tmp_path, monkeypatch):
    tiny = write_layout(tmp_path / "tiny.thl", make_grid(2, 5))
    real = cli.brute_force

    def off_by_one(theatre, config):
        r = real(theatre, config)
        return SolveResult(r.plan, r.objective + 1, r.status)

    monkeypatch.setattr(cli, "brute_force", off_by_one)
    code, out, _ = run(capsys, "oracle", "--layout", tiny, "--sizes", "1,2")
    assert code == 3 and "MISMATCH" in out


def test_feasible_only_exit(capsys, tmp_path):
    layout = write_layout(tmp_path / "big.thl", make_grid(8, 16))
    code, out, _ = run(capsys, "solve", "--layout", layout, "--node-limit", "50")
    assert code == 2 and field(out, "status") == "feasible-only"


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--layout", "missing.thl"],
        ["solve"],
        ["nonsense"],
        ["solve", "--layout", "{sq3}", "--profile", "mge7"],
        ["solve", "--layout", "{sq3}", "--sizes", "0,1"],
        ["solve", "--layout", "{sq3}", "--profile", "missing.prof"],
        ["solve", "--layout", "{bad}"],
        ["solve", "--layout", "{sq3}", "--shows", "0"],
        ["render", "--layout", "{sq3}", "--plan", "{bad}"],
    ],
)
def test_errors_exit_one(capsys, tmp_path, sq3, argv):
    bad = tmp_path / "bad.txt"
    bad.write_text("this is not valid\n")
    argv = [a.format(sq3=sq3, bad=bad) for a in argv]
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err


def test_profile_file(capsys, tmp_path, sq8):
    prof = tmp_path / "p.prof"
    prof.write_text("epsilon=0.02\nt=1 p=0.2\nt=2 p=0.8\n")
    _, a, _ = run(capsys, "solve", "--layout", sq8, "--profile", prof)
    _, b, _ = run(capsys, "solve", "--layout", sq8, "--profile", "mge3")
    assert field(a, "objective") == field(b, "objective")


def test_deterministic_across_threads(capsys, tmp_path):
    layout = write_layout(tmp_path / "g.thl", make_grid(4, 9))
    outs = set()
    for threads in ("1", "4"):
        plan = tmp_path / f"plan{threads}.txt"
        _, out, _ = run(capsys, "solve", "--layout", layout, "--profile", "mge3", "--shows", "2", "--threads", threads, "--out", plan, "--render", "ascii")
        outs.add((out, plan.read_text()))
    assert len(outs) == 1


def test_module_entry_point(sq3):
    proc = subprocess.run([sys.executable, "-m", "safeseat", "bounds", "--layout", sq3], capture_output=True, text=True)
    assert proc.returncode == 0 and "volume rhs: 19" in proc.stdout
