"""Exact branch-and-bound for maximum safe seating, plus a brute-force oracle.

The search works directly on the packing rows of the integer model: two
candidate families conflict when they share a trapezoid cell in the same show
or a seat across shows.  Candidates are branched in ``(v, r, s, t)`` order,
include before exclude, so the first optimal plan met is the returned one.

Bounds used at every node (the smallest wins):

* persons so far plus the uncovered, still-reachable ``S + T`` cells times the
  best persons-per-cell ratio among usable sizes;
* the profile-constrained persons-per-cell ratio times all reachable cells;
* the exact optimum of the remaining candidate suffix, precomputed from the
  back (Russian-doll search) on instances that are small enough.
"""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import floor, gcd
from typing import Callable, Iterable

import numpy as np

from .arrangement import (
    Placement,
    SeatingPlan,
    TargetProfile,
    counts,
    is_arrangement,
    is_safe_trapezoids,
    is_safe_zones,
    multi_show_valid,
    profile_satisfied,
)
from .bounds import trapezoid_cost, volume_bound_holds
from .ilp import PACKING_CLASSES, IlpModel, add_clique_cuts, build_model, y_name
from .geometry import Regime, geometry_for
from .layout import Theatre, with_geometry

log = logging.getLogger(__name__)

OPTIMAL = "optimal"
FEASIBLE = "feasible-only"
DEFAULT_NODE_LIMIT = 5_000_000
RUSSIAN_DOLL_LIMIT = 600
BRUTE_FORCE_LIMIT = 40
COUNT_BOUND_SPAN = 120


@dataclass(frozen=True)
class SolveConfig:
    sizes: tuple[int, ...]
    profile: TargetProfile
    shows: int = 1
    alternating: bool = False
    flip_parity: bool = False
    symmetry_breaking: bool = False
    cuts: bool = False
    node_limit: int = DEFAULT_NODE_LIMIT
    time_limit: float | None = None
    threads: int = 1
    regime: Regime | None = None

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(sorted(set(self.sizes))))
        if self.regime is not None:
            object.__setattr__(self, "regime", Regime.parse(self.regime))
        if not self.sizes:
            raise ValueError("at least one family size must be allowed")
        if self.shows < 1:
            raise ValueError("shows must be at least 1")
        if self.node_limit <= 0 or (self.time_limit is not None and self.time_limit <= 0):
            raise ValueError("limits must be positive")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")
        if self.alternating and self.shows > 2:
            raise ValueError("alternating rows supports one or two shows")


@dataclass(frozen=True)
class SolveResult:
    plan: SeatingPlan
    objective: int
    status: str
    nodes: int = 0
    show_persons: tuple[int, ...] = field(default=())

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Limits:
    def __init__(self, node_limit: int, time_limit: float | None):
        self.node_limit = node_limit
        self.deadline = None if time_limit is None else time.monotonic() + time_limit
        self.nodes = 0
        self.hit = False

    def expired(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline

    def tick(self) -> bool:
        self.nodes += 1
        if self.nodes >= self.node_limit:
            self.hit = True
        elif self.deadline is not None and (self.nodes & 1023) == 0 and time.monotonic() > self.deadline:
            self.hit = True
        return self.hit


def _ratio_bounds(sizes, profile: TargetProfile, T) -> tuple[Fraction, Fraction | None]:
    """Best persons-per-cell ratio overall, and under the profile share box.

    The second value maximises ``sum q_t t / sum q_t cost_t`` over share vectors
    ``q`` in the box ``[p_t - eps, p_t + eps]`` summing to one; a linear-fractional
    optimum sits at a vertex, where at most one share is strictly inside its box.
    ``None`` means no nonempty plan can meet the profile.
    """
    eps = profile.epsilon
    usable = [t for t in sizes if profile.share(t) + eps > 0]
    cost = {t: trapezoid_cost(t, T) for t in sizes}
    rho_max = max((Fraction(t, cost[t]) for t in usable), default=Fraction(0))
    lo = {t: max(Fraction(0), profile.share(t) - eps) for t in sizes}
    hi = {t: min(Fraction(1), profile.share(t) + eps) for t in sizes}
    best = None
    for free in sizes:
        others = [t for t in sizes if t != free]
        for choice in itertools.product((0, 1), repeat=len(others)):
            q = {t: (hi[t] if c else lo[t]) for t, c in zip(others, choice)}
            q[free] = 1 - sum(q.values())
            if not lo[free] <= q[free] <= hi[free]:
                continue
            value = sum(q[t] * t for t in sizes) / sum(q[t] * cost[t] for t in sizes)
            if best is None or value > best:
                best = value
    return rho_max, best


class _Search:
    def __init__(self, model: IlpModel, config: SolveConfig, limits: _Limits):
        self.model = model
        self.config = config
        self.limits = limits
        self.cands = model.placements
        n = len(self.cands)
        self.n = n
        index = {y_name(p): i for i, p in enumerate(self.cands)}
        self.weight = [p.t for p in self.cands]
        self.conflict = [0] * n
        self.cellmask = [0] * n
        cell_id = 0
        for row in model.constraints:
            if row.kind not in PACKING_CLASSES:
                continue
            members = [index[var] for var in row.variables]
            rowmask = 0
            for i in members:
                rowmask |= 1 << i
            for i in members:
                self.conflict[i] |= rowmask
            if row.kind == "safe":
                for i in members:
                    self.cellmask[i] |= 1 << cell_id
                cell_id += 1
        for i in range(n):
            self.conflict[i] &= ~(1 << i)
        self.suffix_cells = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            self.suffix_cells[i] = self.suffix_cells[i + 1] | self.cellmask[i]
        self.exact_union = n <= 2000

        profile = config.profile
        self.sizes = model.sizes
        self.size_index = {t: k for k, t in enumerate(self.sizes)}
        T = model.theatre.trapezoid
        self.cost = {t: trapezoid_cost(t, T) for t in self.sizes}
        self.min_cost = min(self.cost.values())
        self.rho_max, self.rho_profile = _ratio_bounds(self.sizes, profile, T)
        eps = profile.epsilon
        self.upper = [profile.share(t) + eps for t in self.sizes]
        self.lower = [profile.share(t) - eps for t in self.sizes]

        # integer share limits as (numerator, denominator) for exact ceil/floor
        self.lower_nd = [(q.numerator, q.denominator) for q in self.lower]
        self.upper_nd = [(q.numerator, q.denominator) for q in self.upper]
        costs = [self.cost[t] for t in self.sizes]
        slope = (costs[-1] - costs[0]) // (self.sizes[-1] - self.sizes[0]) if len(costs) > 1 else 2
        offset = costs[0] - slope * self.sizes[0]
        linear = slope > 0 and all(self.cost[t] == slope * t + offset for t in self.sizes)
        self.cost_line = (slope, offset) if linear else None
        self.count_cache: dict = {}

        self.sym = config.symmetry_breaking and config.shows > 1
        seg_of = model.theatre.segment_of
        self.segment = [seg_of[(p.r, p.s)] for p in self.cands]
        self.rds: list[int] | None = None
        self.lag: tuple[list[int], int, list[int]] | None = None
        self.canonical = True

    # -- helpers -----------------------------------------------------------
    def budget(self, P: int, covered: int) -> int:
        if not P:
            return 0
        if self.exact_union:
            cells = 0
            for j in _bits(P):
                cells |= self.cellmask[j]
        else:
            low = (P & -P).bit_length() - 1
            cells = self.suffix_cells[low]
        return (cells & ~covered).bit_count()

    def profile_ok(self, n: tuple[int, ...]) -> bool:
        total = sum(n)
        return all(self.lower[k] * total <= n[k] <= self.upper[k] * total for k in range(len(n)))

    def upper_ok(self, n: tuple[int, ...], spare: int) -> bool:
        # at most ``spare`` more families can still be added to dilute any share
        total = sum(n) + spare
        return all(n[k] <= self.upper[k] * total for k in range(len(n)))

    def sym_ok(self, i: int, firsts: dict) -> bool:
        p = self.cands[i]
        seg = self.segment[i]
        for v in range(1, p.v):
            first = firsts.get((seg, v))
            if first is None or first >= (p.r, p.s):
                return False
        return True

    def plan_of(self, chosen) -> SeatingPlan:
        items = []
        while chosen is not None:
            chosen, i = chosen
            items.append(self.cands[i])
        return SeatingPlan(tuple(items), self.config.shows)

    # -- Russian-doll suffix optima (packing rows only) ---------------------
    def lagrange_weights(self) -> tuple[list[int], int] | None:
        """Integer candidate weights folding scarce-size upper profile rows into the objective.

        For multipliers ``lam_t >= 0`` every plan meeting ``n_t <= u_t N`` has
        ``persons <= sum_i w_i`` with ``w_i = t_i - sum_t lam_t ([t_i = t] - u_t)``.
        Sizes capped below half the families get ``lam_t = t``; weights are
        scaled by the common denominator to stay integral.
        """
        lam = {t: t for k, t in enumerate(self.sizes) if self.upper[k] < Fraction(1, 2)}
        if not lam:
            return None
        u = dict(zip(self.sizes, self.upper))
        w = {t: t - sum(l * ((t == x) - u[x]) for x, l in lam.items()) for t in self.sizes}
        scale = 1
        for value in w.values():
            scale = scale * value.denominator // gcd(scale, value.denominator)
        return [int(w[p.t] * scale) for p in self.cands], scale

    def russian_doll(self, weight: list[int]) -> list[int] | None:
        n = self.n
        rds = [0] * (n + 1)
        full = (1 << n) - 1
        for i in range(n - 1, -1, -1):
            P = full & ~((1 << (i + 1)) - 1) & ~self.conflict[i]
            need = rds[i + 1] - weight[i]
            rds[i] = max(rds[i + 1], weight[i] + self._suffix_best(P, need, rds, weight))
            if self.limits.hit:
                return None
        return rds

    def _suffix_best(self, P: int, floor_value: int, rds: list[int], weight: list[int]) -> int:
        """Largest packing weight within ``P`` if it exceeds ``floor_value``, else ``floor_value``."""
        best = floor_value
        stack = [(P, 0)]
        while stack:
            P, value = stack.pop()
            if self.limits.tick():
                return best
            if value > best:
                best = value
            if not P:
                continue
            low = (P & -P).bit_length() - 1
            if value + rds[low] <= best:
                continue
            stack.append((P & ~(1 << low), value))
            stack.append((P & ~(1 << low) & ~self.conflict[low], value + weight[low]))
        return best

    def prepare_suffix_bounds(self) -> None:
        self.rds = self.russian_doll(self.weight)
        lag = self.lagrange_weights()
        if self.rds is not None and lag is not None:
            weight, scale = lag
            table = self.russian_doll(weight)
            if table is not None:
                self.lag = (weight, scale, table)

    def count_bound(self, n: tuple[int, ...], budget: int) -> int | None:
        """Most persons over integer count vectors ``n' >= n`` meeting the profile whose
        extra trapezoid volume fits in ``budget``; ``-1`` when none exists.

        With cost linear in size (``cost_t = slope t + offset``) the persons of a
        count vector are ``(volume - offset N) / slope``, so for each family total
        ``N`` only the volume range of the share box matters.
        """
        key = (n, budget)
        hit = self.count_cache.get(key)
        if hit is not None:
            return hit
        slope, offset = self.cost_line
        costs = [self.cost[t] for t in self.sizes]
        used = sum(c * k for c, k in zip(costs, n))
        cap = used + budget
        total = sum(n)
        order_up = sorted(range(len(n)), key=lambda k: costs[k])
        best = -1
        for N in range(total, total + budget // self.min_cost + 1):
            lo = [max(n[k], -(-a * N // b)) for k, (a, b) in enumerate(self.lower_nd)]
            hi = [a * N // b for a, b in self.upper_nd]
            if any(l > h for l, h in zip(lo, hi)) or sum(lo) > N or sum(hi) < N:
                continue
            base = sum(c * l for c, l in zip(costs, lo))
            rest = N - sum(lo)
            cmin = cmax = base
            left = rest
            for k in order_up:
                take = min(left, hi[k] - lo[k])
                cmin += take * costs[k]
                left -= take
            left = rest
            for k in reversed(order_up):
                take = min(left, hi[k] - lo[k])
                cmax += take * costs[k]
                left -= take
            if cmin > cap:
                continue
            best = max(best, (min(cap, cmax) - offset * N) // slope)
        if len(self.count_cache) > 500_000:
            self.count_cache.clear()
        self.count_cache[key] = best
        return best

    # -- main search --------------------------------------------------------
    def bound(self, P: int, covered: int, persons: int, used: int, lagval: int, n: tuple[int, ...]) -> tuple[int, int]:
        budget = self.budget(P, covered)
        b = persons + floor(budget * self.rho_max)
        if self.rho_profile is not None:
            b = min(b, floor(self.rho_profile * (used + budget)))
        else:
            b = min(b, 0)
        if P and self.rds is not None:
            low = (P & -P).bit_length() - 1
            b = min(b, persons + self.rds[low])
            if self.lag is not None:
                _, scale, table = self.lag
                b = min(b, (lagval + table[low]) // scale)
        if self.cost_line is not None and budget // self.min_cost <= COUNT_BOUND_SPAN and b > persons:
            b = min(b, self.count_bound(n, budget))
        return b, budget

    def run(self, incumbent: SeatingPlan | None) -> tuple[SeatingPlan, int, bool]:
        best_plan = incumbent if incumbent is not None else SeatingPlan((), self.config.shows)
        best = best_plan.persons
        # until the search meets a plan of the incumbent's value itself, ties are
        # explored so the first plan in branching order is the one returned
        own = best == 0 or not self.canonical
        k = len(self.sizes)
        start = (self.conflict_free_all(), 0, 0, 0, 0, (0,) * k, None, {})
        stack = [start]
        while stack:
            P, covered, persons, used, lagval, n, chosen, firsts = stack.pop()
            if self.limits.tick():
                break
            if not P:
                continue
            bnd, budget = self.bound(P, covered, persons, used, lagval, n)
            if bnd < best or (own and bnd == best):
                continue
            i = (P & -P).bit_length() - 1
            stack.append((P & ~(1 << i), covered, persons, used, lagval, n, chosen, firsts))
            p = self.cands[i]
            if self.sym and not self.sym_ok(i, firsts):
                continue
            kk = self.size_index[p.t]
            n2 = n[:kk] + (n[kk] + 1,) + n[kk + 1 :]
            if not self.upper_ok(n2, budget // self.min_cost):
                continue
            persons2 = persons + p.t
            chosen2 = (chosen, i)
            if self.sym:
                key = (self.segment[i], p.v)
                firsts2 = firsts if key in firsts else {**firsts, key: (p.r, p.s)}
            else:
                firsts2 = firsts
            if (persons2 > best or (persons2 == best and not own)) and self.profile_ok(n2):
                best, best_plan, own = persons2, self.plan_of(chosen2), True
            stack.append(
                (
                    P & ~(1 << i) & ~self.conflict[i],
                    covered | self.cellmask[i],
                    persons2,
                    used + self.cost[p.t],
                    lagval + (self.lag[0][i] if self.lag is not None else 0),
                    n2,
                    chosen2,
                    firsts2,
                )
            )
        return best_plan, best, not self.limits.hit

    def conflict_free_all(self) -> int:
        return (1 << self.n) - 1

    # -- greedy incumbent ---------------------------------------------------
    def count_targets(self, limit: int = 8) -> list[tuple[int, ...]]:
        """Profile-feasible count vectors, one per family total, most persons per volume first."""
        cells = len(self.model.cells) * self.config.shows
        costs = [self.cost[t] for t in self.sizes]
        found = []
        for N in range(1, cells // self.min_cost + 1):
            lo = [-(-a * N // b) for a, b in self.lower_nd]
            hi = [a * N // b for a, b in self.upper_nd]
            if any(l > h for l, h in zip(lo, hi)) or sum(lo) > N or sum(hi) < N:
                continue
            # push the spare families onto the sizes with the best persons per cell
            vec = list(lo)
            left = N - sum(lo)
            for k in sorted(range(len(vec)), key=lambda k: (-Fraction(self.sizes[k], costs[k]), k)):
                take = min(left, hi[k] - lo[k])
                vec[k] += take
                left -= take
            volume = sum(c * x for c, x in zip(costs, vec))
            if volume <= cells:
                found.append(tuple(vec))
        if len(found) > limit:
            step = len(found) / limit
            found = [found[int(len(found) - 1 - i * step)] for i in range(limit)]
        return found[::-1] if found and found[0] < found[-1] else found

    def greedy(self, allow: Callable[[Placement], bool] | None = None, target: tuple[int, ...] | None = None) -> list[int]:
        """Left-to-right fill; per start seat pick the size furthest below its target count."""
        P = self.conflict_free_all()
        if allow is not None:
            for i, p in enumerate(self.cands):
                if not allow(p):
                    P &= ~(1 << i)
        chosen: list[int] = []
        n = [0] * len(self.sizes)
        firsts: dict = {}
        profile = self.config.profile
        for _, group in itertools.groupby(range(self.n), key=lambda i: (self.cands[i].v, self.cands[i].r, self.cands[i].s)):
            options = []
            total = sum(n)
            for i in group:
                if not (P >> i) & 1:
                    continue
                if self.sym and not self.sym_ok(i, firsts):
                    continue
                t = self.cands[i].t
                kk = self.size_index[t]
                if target is None:
                    if n[kk] >= self.upper[kk] * (total + 1):
                        continue
                    deficit = profile.share(t) * (total + 1) - n[kk]
                else:
                    if n[kk] >= target[kk]:
                        continue
                    deficit = Fraction(target[kk] - n[kk], target[kk])
                options.append((deficit, t, i))
            if not options:
                continue
            _, t, i = max(options)
            p = self.cands[i]
            chosen.append(i)
            n[self.size_index[t]] += 1
            P &= ~(1 << i) & ~self.conflict[i]
            firsts.setdefault((self.segment[i], p.v), (p.r, p.s))
        return self._repair(chosen)

    def _repair(self, chosen: list[int]) -> list[int]:
        chosen = list(chosen)
        while chosen:
            n = [0] * len(self.sizes)
            for i in chosen:
                n[self.size_index[self.cands[i].t]] += 1
            total = sum(n)
            over = [n[k] - self.upper[k] * total for k in range(len(n))]
            under = [self.lower[k] * total - n[k] for k in range(len(n))]
            if max(over) <= 0 and max(under) <= 0:
                break
            if max(over) > 0:
                drop = self.sizes[max(range(len(n)), key=lambda k: (over[k], k))]
            else:
                short = max(range(len(n)), key=lambda k: (under[k], k))
                share = [n[k] - self.config.profile.share(self.sizes[k]) * total for k in range(len(n))]
                cands = [k for k in range(len(n)) if k != short and n[k] > 0]
                if not cands:
                    return []
                drop = self.sizes[max(cands, key=lambda k: (share[k], k))]
            last = max(idx for idx, i in enumerate(chosen) if self.cands[i].t == drop)
            del chosen[last]
        if self.sym and not self._sym_valid(chosen):
            return []
        return chosen

    def _sym_valid(self, chosen: list[int]) -> bool:
        firsts: dict = {}
        for i in sorted(chosen):
            if not self.sym_ok(i, firsts):
                return False
            p = self.cands[i]
            firsts.setdefault((self.segment[i], p.v), (p.r, p.s))
        return True


def _row_parity_filter(shows: int, flip: bool, offset: int = 0) -> Callable[[Placement], bool]:
    base = 1 if flip else 0

    def allow(p: Placement) -> bool:
        return (p.r - base - (p.v - 1) - offset) % 2 == 0

    return allow


def alternating_filter(shows: int, flip: bool = False) -> Callable[[Placement], bool]:
    """Show 1 uses even rows and show 2 odd rows (swapped by ``flip``)."""
    return _row_parity_filter(shows, flip)


def _in_regime(theatre: Theatre, config: SolveConfig) -> Theatre:
    if config.regime is None:
        return theatre
    g = theatre.geometry
    return with_geometry(theatre, type(g)(g.a, g.b, geometry_for(config.regime).c))


def _prepare(theatre: Theatre, config: SolveConfig, allow=None) -> IlpModel:
    model = build_model(theatre, config.sizes, config.profile, config.shows, allow)
    if config.cuts:
        model = add_clique_cuts(model)
    return model


def _finish(plan: SeatingPlan, theatre: Theatre, config: SolveConfig, status: str, nodes: int) -> SolveResult:
    valid = (
        is_arrangement(plan, theatre)
        and multi_show_valid(plan)
        and is_safe_trapezoids(plan, theatre)
        and volume_bound_holds(plan, theatre)
        and profile_satisfied(counts(plan), config.profile, config.sizes)
    )
    if not valid:
        raise RuntimeError("solver produced an invalid plan")
    per_show = tuple(sum(p.t for p in plan.show(v)) for v in range(1, plan.shows + 1))
    return SolveResult(plan, plan.persons, status, nodes, per_show)


def usable_sizes(theatre: Theatre, config: SolveConfig) -> tuple[int, ...] | None:
    """Sizes that can occur in some profile-feasible plan, or ``None`` if only the empty plan can.

    A plan has at most ``N_max = shows * |S+T| // min cost`` families, so a size
    whose share cap ``(p_t + eps) N_max`` is below one never occurs; a size with
    a positive share floor that never occurs rules out every nonempty plan.
    """
    profile = config.profile
    T = theatre.trapezoid
    cells = len(theatre.expanded) * config.shows
    sizes = [t for t in config.sizes if profile.share(t) + profile.epsilon > 0]
    while sizes:
        n_max = cells // min(trapezoid_cost(t, T) for t in sizes)
        keep = [t for t in sizes if (profile.share(t) + profile.epsilon) * n_max >= 1]
        if keep == sizes:
            break
        sizes = keep
    dropped = set(config.sizes) - set(sizes)
    if not sizes or any(profile.share(t) - profile.epsilon > 0 for t in dropped):
        return None
    return tuple(sizes)


def _solve(theatre: Theatre, config: SolveConfig, allow=None, greedy_filters=()) -> SolveResult:
    theatre = _in_regime(theatre, config)
    sizes = usable_sizes(theatre, config)
    if sizes is None:
        return _finish(SeatingPlan((), config.shows), theatre, config, OPTIMAL, 0)
    limits = _Limits(config.node_limit, config.time_limit)
    model = _prepare(theatre, replace(config, sizes=sizes), allow)
    search = _Search(model, config, limits)
    if search.rho_profile is None:
        return _finish(SeatingPlan((), config.shows), theatre, config, OPTIMAL, 0)

    incumbent = None
    targets = [None, *search.count_targets()]
    for extra in (None, *greedy_filters):
        for target in targets:
            chosen = search.greedy(extra, target)
            plan = SeatingPlan(tuple(search.cands[i] for i in chosen), config.shows)
            if incumbent is None or plan.persons > incumbent.persons:
                incumbent = plan
    log.debug("greedy incumbent: %d persons", incumbent.persons)

    if search.n <= RUSSIAN_DOLL_LIMIT:
        # the suffix tables may spend at most a quarter of the node budget
        limits.node_limit = config.node_limit // 4
        search.prepare_suffix_bounds()
        limits.node_limit = config.node_limit
        if limits.hit and not limits.expired():
            log.debug("suffix bounds abandoned at their node budget")
            limits.hit = False
    plan, _, complete = search.run(incumbent)
    return _finish(plan, theatre, config, OPTIMAL if complete else FEASIBLE, limits.nodes)


def solve_exact(theatre: Theatre, config: SolveConfig) -> SolveResult:
    """Maximum safe plan meeting the profile; ``status`` says whether it is proven optimal."""
    if config.alternating:
        return solve_alternating(theatre, config)
    filters = []
    if config.shows <= 2:
        filters = [_row_parity_filter(config.shows, False), _row_parity_filter(config.shows, True)]
    return _solve(theatre, config, None, filters)


def solve_alternating(theatre: Theatre, config: SolveConfig) -> SolveResult:
    """Optimum when each show only uses every other row."""
    if config.shows not in (1, 2):
        raise ValueError("alternating rows supports one or two shows")
    allow = alternating_filter(config.shows, config.flip_parity)
    plain = SolveConfig(**{**config.__dict__, "alternating": False})
    return _solve(theatre, plain, allow)


# -- brute-force oracle ------------------------------------------------------


def _safe_arrangements(theatre: Theatre, cands: list[Placement]) -> list[tuple[Placement, ...]]:
    """Every safe single-show arrangement, checked pairwise against forbidden zones."""
    F = theatre.forbidden
    zone = [p.zone(F) for p in cands]
    seats = [p.seats for p in cands]
    n = len(cands)
    ok = [[not (seats[i] & zone[j]) and not (seats[j] & zone[i]) for j in range(n)] for i in range(n)]
    out: list[tuple[Placement, ...]] = []

    def extend(start: int, chosen: list[int]):
        out.append(tuple(cands[i] for i in chosen))
        for j in range(start, n):
            if all(ok[i][j] for i in chosen):
                chosen.append(j)
                extend(j + 1, chosen)
                chosen.pop()

    extend(0, [])
    return out


def brute_force(theatre: Theatre, config: SolveConfig) -> SolveResult:
    """Exhaustive enumeration of safe plans (one or two shows, small theatres only)."""
    if config.shows > 2:
        raise ValueError("brute force handles at most two shows")
    theatre = _in_regime(theatre, config)
    allow = alternating_filter(config.shows, config.flip_parity) if config.alternating else None
    sizes = config.sizes
    seats = theatre.seats
    per_show = []
    for v in range(1, config.shows + 1):
        cands = [
            Placement(v, r, s, t)
            for r, s in sorted(seats)
            for t in sizes
            if all((r, s + i) in seats for i in range(t)) and (allow is None or allow(Placement(v, r, s, t)))
        ]
        if len(cands) > BRUTE_FORCE_LIMIT:
            raise ValueError(f"brute force refuses {len(cands)} candidates per show (limit {BRUTE_FORCE_LIMIT})")
        per_show.append(_safe_arrangements(theatre, cands))

    index = {s: k for k, s in enumerate(sorted(seats))}
    size_pos = {t: k for k, t in enumerate(sizes)}

    def table(arrs):
        mask = np.zeros(len(arrs), dtype=object)
        cnt = np.zeros((len(arrs), len(sizes)), dtype=np.int64)
        for a, arr in enumerate(arrs):
            m = 0
            for p in arr:
                for seat in p.seats:
                    m |= 1 << index[seat]
                cnt[a, size_pos[p.t]] += 1
            mask[a] = m
        return mask, cnt

    profile = config.profile
    eps = profile.epsilon
    weights = np.array(sizes, dtype=np.int64)

    def feasible(cnt: np.ndarray) -> np.ndarray:
        # exact rational test via integer scaling of the shares
        total = cnt.sum(axis=-1)
        ok = np.ones(cnt.shape[:-1], dtype=bool)
        for k, t in enumerate(sizes):
            for share, cmp in ((profile.share(t) - eps, np.greater_equal), (profile.share(t) + eps, np.less_equal)):
                num, den = share.numerator, share.denominator
                ok &= cmp(cnt[..., k] * den, total * num)
        return ok

    if config.shows == 1:
        arrs = per_show[0]
        _, cnt = table(arrs)
        value = np.where(feasible(cnt), cnt @ weights, -1)
        a = int(np.argmax(value))
        plan = SeatingPlan(arrs[a] if value[a] > 0 else (), 1)
    else:
        a1, a2 = per_show
        m1, c1 = table(a1)
        m2, c2 = table(a2)
        i1 = np.array([int(x) for x in m1], dtype=np.int64) if len(seats) < 63 else None
        i2 = np.array([int(x) for x in m2], dtype=np.int64) if len(seats) < 63 else None
        if i1 is None:
            raise ValueError("brute force supports at most 62 seats for two shows")
        best_value, best_pair = 0, None
        chunk = max(1, 4_000_000 // max(len(a2), 1))
        for lo in range(0, len(a1), chunk):
            hi = min(len(a1), lo + chunk)
            disjoint = (i1[lo:hi, None] & i2[None, :]) == 0
            total = c1[lo:hi, None, :] + c2[None, :, :]
            value = np.where(disjoint & feasible(total), total @ weights, -1)
            flat = int(np.argmax(value))
            x, y = divmod(flat, value.shape[1])
            if value[x, y] > best_value:
                best_value, best_pair = int(value[x, y]), (lo + x, y)
        plan = SeatingPlan((*a1[best_pair[0]], *a2[best_pair[1]]), 2) if best_pair else SeatingPlan((), 2)
    if not is_safe_zones(plan, theatre):
        raise RuntimeError("brute force produced an unsafe plan")
    return _finish(plan, theatre, config, OPTIMAL, 0)
