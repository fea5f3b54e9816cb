"""``safeseat`` command line: solve, bounds, hilbert, emit-lp, render, oracle."""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .arrangement import (
    DEFAULT_EPSILON,
    PRESET_PROFILES,
    SeatingPlan,
    TargetProfile,
    counts,
    format_plan,
    is_arrangement,
    is_safe_trapezoids,
    is_safe_zones,
    multi_show_valid,
    parse_plan,
    parse_profile,
    preset_profile,
    to_fraction,
)
from .bounds import (
    alternating_density,
    hilbert_density,
    profile_density_bound,
    realized_density_bound,
    show_decimal,
    volume_lhs,
    volume_rhs,
    volume_rhs_from_sizes,
    weighted_density,
)
from .geometry import Regime, geometry_for
from .ilp import add_clique_cuts, add_symmetry_breaking, build_model, emit_lp
from .layout import LayoutError, Theatre, parse_layout, with_geometry
from .render import classify, render_ascii, render_svg
from .solver import OPTIMAL, SolveConfig, alternating_filter, brute_force, solve_exact

EXIT_OK, EXIT_ERROR, EXIT_FEASIBLE, EXIT_MISMATCH = 0, 1, 2, 3


class CliError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}") from None


def _theatre(args) -> Theatre:
    theatre = parse_layout(_read(args.layout))
    if getattr(args, "distance", None):
        g = theatre.geometry
        theatre = with_geometry(theatre, type(g)(g.a, g.b, geometry_for(args.distance).c))
    return theatre


def _sizes(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        sizes = tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise CliError(f"bad size list {text!r}") from None
    if not sizes or min(sizes) < 1:
        raise CliError("sizes must be positive integers")
    return sizes


def _profile(args, sizes: tuple[int, ...] | None) -> TargetProfile:
    eps = None if args.epsilon is None else to_fraction(args.epsilon)
    name = args.profile
    if name is None:
        if sizes is None:
            name = "mge1"
        else:
            return TargetProfile.uniform(sizes, Fraction(1) if eps is None else eps)
    if name in PRESET_PROFILES:
        return preset_profile(name, DEFAULT_EPSILON if eps is None else eps)
    profile = parse_profile(_read(name))
    return profile if eps is None else profile.with_epsilon(eps)


def _config(args) -> tuple[SolveConfig, TargetProfile]:
    sizes = _sizes(args.sizes)
    profile = _profile(args, sizes)
    sizes = sizes or profile.sizes
    config = SolveConfig(
        sizes=sizes,
        profile=profile,
        shows=args.shows,
        alternating=getattr(args, "alternating", False),
        flip_parity=getattr(args, "flip_parity", False),
        symmetry_breaking=getattr(args, "symbreak", False),
        cuts=getattr(args, "cuts", False),
        node_limit=getattr(args, "node_limit", 5_000_000),
        time_limit=getattr(args, "time_limit", None),
        threads=getattr(args, "threads", 1),
    )
    return config, profile


def _fmt(x: Fraction) -> str:
    return f"{show_decimal(x)} ({x.numerator}/{x.denominator})"


def _render(theatre: Theatre, plan: SeatingPlan, fmt: str) -> str:
    classified = classify(theatre, plan)
    return render_svg(classified) if fmt == "svg" else render_ascii(classified)


def cmd_solve(args) -> int:
    theatre = _theatre(args)
    config, profile = _config(args)
    result = solve_exact(theatre, config)
    plan = result.plan
    n_seats = len(theatre.seats)
    T = theatre.trapezoid
    rhs = volume_rhs(theatre)
    n = counts(plan, config.sizes)
    lines = [
        f"status: {result.status}",
        f"objective: {result.objective}",
        "persons per show: " + " ".join(str(x) for x in result.show_persons),
        "families: " + " ".join(f"n_{t}={c}" for t, c in n.items()),
        f"density: {_fmt(Fraction(result.objective, n_seats))}",
    ]
    for v in range(1, config.shows + 1):
        lhs = volume_lhs(counts(SeatingPlan(plan.show(v), plan.shows)), T)
        lines.append(f"volume bound show {v}: lhs={lhs} rhs={rhs} {'ok' if lhs <= rhs else 'VIOLATED'}")
    lines.append(f"profile density bound: {_fmt(profile_density_bound(profile, theatre))}")
    if plan.placements:
        lines.append(f"realized-profile density bound: {_fmt(realized_density_bound(plan, theatre))}")
    if config.alternating:
        full = solve_exact(theatre, SolveConfig(**{**config.__dict__, "alternating": False}))
        loss = Fraction(0) if full.objective == 0 else 1 - Fraction(result.objective, full.objective)
        lines.append(f"full-row objective: {full.objective} ({full.status})")
        lines.append(f"alternating loss: {show_decimal(100 * loss)}%")
    lines.append(f"nodes: {result.nodes}")
    print("\n".join(lines))
    if args.out:
        _write(args.out, format_plan(plan))
    if args.render:
        text = _render(theatre, plan, args.render)
        if args.render_out:
            _write(args.render_out, text)
        else:
            sys.stdout.write(text)
    return EXIT_OK if result.status == OPTIMAL else EXIT_FEASIBLE


def cmd_bounds(args) -> int:
    profile = _profile(args, None)
    if args.layout:
        theatre = _theatre(args)
        n_seats, rim = len(theatre.seats), len(theatre.rim)
        T = theatre.trapezoid
    else:
        if args.seats is None or args.rim is None:
            raise CliError("give --layout, or both --seats and --rim")
        if args.seats < 1 or args.rim < 0:
            raise CliError("--seats must be positive and --rim non-negative")
        n_seats, rim = args.seats, args.rim
        T = Regime.parse(args.distance or Regime.STANDARD)
    rhs = volume_rhs_from_sizes(n_seats, rim)
    bound = weighted_density(profile.p, T) * Fraction(rhs, n_seats)
    print(f"seats: {n_seats}")
    print(f"rim: {rim}")
    print(f"expanded: {n_seats} + {rim} = {rhs}")
    print(f"volume rhs: {rhs}")
    print(f"profile {profile.name or 'custom'} density bound: {_fmt(bound)}")
    print(f"profile {profile.name or 'custom'} seat bound: {int(bound * n_seats)}")
    return EXIT_OK


def cmd_hilbert(args) -> int:
    regime = Regime.parse(args.distance or Regime.STANDARD)
    rows = []
    for t in range(1, args.max_t + 1):
        full = hilbert_density(t, regime)
        alt = alternating_density(t, regime)
        rows.append((t, full.d, full.reciprocal, alt.d, 100 * alt.ratio))

    def short(x: Fraction) -> str:
        text = show_decimal(x)
        return text.rstrip("0").rstrip(".") if "." in text else text

    if args.csv:
        print("t,d_t,inv_d_t,d_alt_t,alt_ratio_pct")
        for t, d, inv, alt, ratio in rows:
            print(f"{t},{short(d)},{short(inv)},{short(alt)},{show_decimal(ratio, 0)}")
    else:
        print(f"distance {regime.value} m")
        for t, d, inv, alt, ratio in rows:
            print(f"t={t}: d_t {short(d)}, 1/d_t {short(inv)}, alternating {short(alt)}, ratio {show_decimal(ratio, 0)}%")
    return EXIT_OK


def cmd_emit_lp(args) -> int:
    theatre = _theatre(args)
    config, profile = _config(args)
    allow = alternating_filter(config.shows, config.flip_parity) if config.alternating else None
    model = build_model(theatre, config.sizes, profile, config.shows, allow)
    if args.cuts:
        model = add_clique_cuts(model)
    if args.symbreak:
        model = add_symmetry_breaking(model)
    text = emit_lp(model)
    if args.out:
        _write(args.out, text)
        print(f"wrote {args.out}: {len(model.placements)} binaries, {len(model.constraints)} rows")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_render(args) -> int:
    theatre = _theatre(args)
    plan = parse_plan(_read(args.plan))
    checks = {
        "inside theatre": is_arrangement(plan, theatre),
        "safe": is_safe_zones(plan, theatre) and is_safe_trapezoids(plan, theatre),
        "seats used once": multi_show_valid(plan),
    }
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise CliError("plan is invalid: fails " + ", ".join(failed))
    text = _render(theatre, plan, args.format)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    theatre = _theatre(args)
    config, _ = _config(args)
    brute = brute_force(theatre, config)
    exact = solve_exact(theatre, config)
    print(f"brute force: {brute.objective}")
    print(f"exact: {exact.objective} ({exact.status})")
    if exact.status != OPTIMAL:
        print("INCONCLUSIVE")
        return EXIT_FEASIBLE
    if brute.objective != exact.objective:
        print("MISMATCH")
        return EXIT_MISMATCH
    print("MATCH")
    return EXIT_OK


def _add_model_flags(p: argparse.ArgumentParser, solving: bool = True) -> None:
    p.add_argument("--layout", required=True, help="layout file")
    p.add_argument("--profile", help="profile file or preset name (mge1..mge4)")
    p.add_argument("--epsilon", help="profile tolerance (default 0.02 for presets)")
    p.add_argument("--sizes", help="comma-separated allowed family sizes")
    p.add_argument("--shows", type=int, default=1)
    p.add_argument("--alternating", action="store_true", help="every other row per show")
    p.add_argument("--flip-parity", action="store_true", help="swap the row parity of the shows")
    p.add_argument("--distance", choices=[r.value for r in Regime])
    if solving:
        p.add_argument("--cuts", action="store_true", help="add L-triple clique rows")
        p.add_argument("--symbreak", action="store_true", help="add show-order symmetry breaking")
        p.add_argument("--time-limit", type=float, help="seconds")
        p.add_argument("--node-limit", type=int, default=5_000_000)
        p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="safeseat", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="maximum safe seating plan")
    _add_model_flags(p)
    p.add_argument("--out", help="write the plan here")
    p.add_argument("--render", choices=["ascii", "svg"])
    p.add_argument("--render-out", help="write the rendering here instead of stdout")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bounds", help="volume and density bounds")
    p.add_argument("--layout")
    p.add_argument("--seats", type=int, help="seat count, when no layout is given")
    p.add_argument("--rim", type=int, help="virtual rim size, when no layout is given")
    p.add_argument("--profile")
    p.add_argument("--epsilon")
    p.add_argument("--distance", choices=[r.value for r in Regime])
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("hilbert", help="lattice density tables")
    p.add_argument("--max-t", type=int, default=6)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--distance", choices=[r.value for r in Regime])
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("emit-lp", help="write the integer program in LP format")
    _add_model_flags(p, solving=False)
    p.add_argument("--cuts", action="store_true")
    p.add_argument("--symbreak", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_emit_lp)

    p = sub.add_parser("render", help="draw a stored plan")
    p.add_argument("--layout", required=True)
    p.add_argument("--plan", required=True)
    p.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    p.add_argument("--distance", choices=[r.value for r in Regime])
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("oracle", help="compare the exact solver with brute force")
    _add_model_flags(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (CliError, LayoutError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
