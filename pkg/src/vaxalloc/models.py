"""Equitable vaccinator-allocation models.

Translates a district, its need matrix, and its travel-time matrix into a
mixed-integer program and back into an allocation plan.

Decision variables: an integer vaccinator count per centre, plus a
continuous service level per admissible (centre, union council, age)
triple. Service levels are expressed as shares of the entry's annual need
(a share times its need gives visits/year); shares keep every coefficient
near unit scale, and plans convert back to visit flows on extraction.
Coverage of an entry is the sum of shares serving it, so explicit coverage
columns are unnecessary; the equity band constrains those sums directly.

Constraint set (K = children_per_day * working_days, the annual visits one
vaccinator can deliver):
  coverage   sum_c share[c,u,a] within the band (banded) or equal to the
             single coverage level (exact equity), for every entry with
             positive need;
  workload   the centre's shares, weighted by need/K, equal its vaccinator
             count (every vaccinator fully used);
  budget     vaccinator counts sum to the planning total.
The objective charges one round trip per serving day: a share's annual
visits, divided by children_per_day, times the round-trip hours of its
(centre, union council) pair.

Locality-bound service (cross_boundary=False) never creates a share column
for a pair that crosses a locality boundary, so such flows are identically
zero by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from .branchbound import MipInstance, solve_mip
from .district import AgeCategory, District
from .need import NeedMatrix
from .simplex import LinearProgram, LpStatus, Relation, solve_lp
from .traveltime import TravelTimeMatrix

COVERAGE_TOL = 1e-6

Utilization = Literal["equality", "at-most"]


class BuildError(ValueError):
    """The program cannot be assembled from the given inputs."""


class MissingEntryError(KeyError):
    """A required travel-time entry is absent."""


@dataclass(frozen=True)
class PlanningParams:
    """Planning knobs; defaults follow the standard field assumptions
    (5 children per vaccinator-day, 273 working days per year)."""

    total_vaccinators: int
    children_per_day: int = 5
    working_days: int = 273
    equity_deviation: float = 0.03
    round_trip_factor: float = 2.0
    cross_boundary: bool = False
    exact_equity: bool | None = None

    def __post_init__(self) -> None:
        if self.exact_equity is None:
            object.__setattr__(self, "exact_equity", self.cross_boundary)
        if self.children_per_day < 1:
            raise ValueError("children_per_day must be at least 1")
        if self.working_days < 1:
            raise ValueError("working_days must be at least 1")
        if self.total_vaccinators < 1:
            raise ValueError("total_vaccinators must be at least 1")
        if not 0.0 <= self.equity_deviation <= 1.0:
            raise ValueError("equity_deviation must lie in [0, 1]")
        if self.round_trip_factor <= 0:
            raise ValueError("round_trip_factor must be positive")

    @property
    def annual_capacity(self) -> int:
        """Visits one vaccinator delivers per year."""
        return self.children_per_day * self.working_days


@dataclass(frozen=True)
class AllocationPlan:
    vaccinators_by_centre: dict[str, int]
    vaccinators_by_locality: dict[str, int]
    flows: dict[tuple[str, str, AgeCategory], float]
    coverage: dict[tuple[str, AgeCategory], float]
    alpha_max: float
    alpha_min: float
    total_travel_hours: float


@dataclass(frozen=True)
class SolveOutcome:
    """Solver result; INFEASIBLE is a legitimate outcome, not an error."""

    status: LpStatus
    plan: AllocationPlan | None
    diagnostic: str | None = None
    nodes_explored: int = 0


@dataclass(frozen=True)
class _Layout:
    centre_ids: tuple[str, ...]
    flow_keys: tuple[tuple[str, str, AgeCategory | None], ...]
    flow_need: np.ndarray
    exact: bool
    n_entries: int

    @property
    def n_centres(self) -> int:
        return len(self.centre_ids)

    @property
    def flow_offset(self) -> int:
        return self.n_centres

    @property
    def band_offset(self) -> int:
        return self.n_centres + len(self.flow_keys)


def _build(
    need: NeedMatrix,
    times: TravelTimeMatrix,
    district: District,
    params: PlanningParams,
    utilization: Utilization = "equality",
    objective: Literal["travel", "met-need"] = "travel",
    extra_rows: tuple[tuple[np.ndarray, Relation, float], ...] = (),
    aggregate_ages: bool = False,
) -> tuple[MipInstance, _Layout]:
    """Assemble the MIP. With aggregate_ages the age categories of a union
    council are merged into one service-share column: ages of the same pair
    share travel cost and workload per delivered visit, and any aggregate
    share splits back proportionally with identical per-age coverage, so the
    merged program has the same optimal value with half the columns."""
    if utilization not in ("equality", "at-most"):
        raise ValueError(f"unknown utilization mode {utilization!r}")

    entries: list[tuple[str, AgeCategory | None]]
    if aggregate_ages:
        entries = [
            (uc.id, None)
            for uc in district.union_councils
            if sum(need.of(uc.id, age) for age in AgeCategory) > 0
        ]
    else:
        entries = [
            (uc.id, age)
            for uc in district.union_councils
            for age in AgeCategory
            if need.of(uc.id, age) > 0
        ]

    def entry_need(uc_id: str, age: AgeCategory | None) -> int:
        if age is None:
            return sum(need.of(uc_id, a) for a in AgeCategory)
        return need.of(uc_id, age)

    locality_of = {c.id: c.locality_id for c in district.centres}
    uc_locality = {u.id: u.locality_id for u in district.union_councils}

    flow_keys: list[tuple[str, str, AgeCategory | None]] = []
    admissible_by_entry: dict[tuple[str, AgeCategory | None], list[int]] = {e: [] for e in entries}
    for centre in district.centres:
        for uc_id, age in entries:
            if not params.cross_boundary and locality_of[centre.id] != uc_locality[uc_id]:
                continue
            admissible_by_entry[(uc_id, age)].append(len(flow_keys))
            flow_keys.append((centre.id, uc_id, age))
    for entry, columns in admissible_by_entry.items():
        if not columns:
            age_label = entry[1].value if entry[1] is not None else "all ages"
            raise BuildError(
                f"no admissible flow variables for union council {entry[0]!r}, "
                f"age {age_label} (no centre shares its locality)"
            )

    layout = _Layout(
        centre_ids=tuple(c.id for c in district.centres),
        flow_keys=tuple(flow_keys),
        flow_need=np.array([entry_need(u, a) for (_, u, a) in flow_keys], dtype=float),
        exact=bool(params.exact_equity),
        n_entries=len(entries),
    )

    n_band = 1 if layout.exact else 2
    n_cols = layout.band_offset + n_band
    names = (
        [f"v[{cid}]" for cid in layout.centre_ids]
        + [
            f"share[{c}:{u}:{a.value if a is not None else '*'}]"
            for (c, u, a) in flow_keys
        ]
        + (["alpha"] if layout.exact else ["alpha_lo", "alpha_hi"])
    )

    K = float(params.annual_capacity)
    cost = np.zeros(n_cols)
    if objective == "travel":
        for k, (cid, uid, _) in enumerate(flow_keys):
            if (cid, uid) not in times.minutes:
                raise MissingEntryError(
                    f"travel time missing for centre {cid!r} / union council {uid!r}"
                )
            # Hours/year for a full share: one round trip per serving day,
            # children_per_day visits per trip.
            cost[layout.flow_offset + k] = (
                params.round_trip_factor
                * times.of(cid, uid)
                / 60.0
                * layout.flow_need[k]
                / params.children_per_day
            )
    else:
        cost[layout.flow_offset : layout.band_offset] = -layout.flow_need / K

    rows: list[np.ndarray] = []
    relations: list[Relation] = []
    rhs: list[float] = []

    for uc_id, age in entries:
        base = np.zeros(n_cols)
        for k in admissible_by_entry[(uc_id, age)]:
            base[layout.flow_offset + k] = 1.0
        if layout.exact:
            row = base.copy()
            row[layout.band_offset] = -1.0
            rows.append(row)
            relations.append(Relation.EQ)
            rhs.append(0.0)
        else:
            low = base.copy()
            low[layout.band_offset] = -1.0  # coverage >= alpha_lo
            rows.append(low)
            relations.append(Relation.GE)
            rhs.append(0.0)
            high = base.copy()
            high[layout.band_offset + 1] = -1.0  # coverage <= alpha_hi
            rows.append(high)
            relations.append(Relation.LE)
            rhs.append(0.0)

    if not layout.exact:
        band = np.zeros(n_cols)
        band[layout.band_offset] = -1.0
        band[layout.band_offset + 1] = 1.0
        rows.append(band)
        relations.append(Relation.LE)
        rhs.append(params.equity_deviation)

    for i, cid in enumerate(layout.centre_ids):
        row = np.zeros(n_cols)
        for k, (c, _, _) in enumerate(flow_keys):
            if c == cid:
                row[layout.flow_offset + k] = layout.flow_need[k] / K
        row[i] = -1.0
        rows.append(row)
        relations.append(Relation.EQ if utilization == "equality" else Relation.LE)
        rhs.append(0.0)

    budget = np.zeros(n_cols)
    budget[: layout.n_centres] = 1.0
    rows.append(budget)
    relations.append(Relation.EQ)
    rhs.append(float(params.total_vaccinators))

    for row, rel, value in extra_rows:
        rows.append(np.asarray(row, dtype=float))
        relations.append(rel)
        rhs.append(float(value))

    lower = np.zeros(n_cols)
    upper = np.full(n_cols, np.inf)
    upper[layout.band_offset :] = 1.0

    program = LinearProgram(
        objective=cost,
        rows=np.array(rows),
        relations=tuple(relations),
        rhs=np.array(rhs),
        lower=lower,
        upper=upper,
        names=tuple(names),
    )
    mask = tuple(i < layout.n_centres for i in range(n_cols))
    return MipInstance(base=program, integer_mask=mask), layout


def build_program(
    need: NeedMatrix,
    times: TravelTimeMatrix,
    district: District,
    params: PlanningParams,
    *,
    utilization: Utilization = "equality",
) -> MipInstance:
    """Assemble the allocation MIP for the given planning parameters."""
    instance, _ = _build(need, times, district, params, utilization=utilization)
    return instance


def _solve_instance(instance: MipInstance):
    """Branch-and-bound plus a polish step: re-solve the LP with the integer
    columns pinned so the continuous values match the rounded counts at LP
    precision."""
    solution = solve_mip(instance)
    if solution.status is not LpStatus.OPTIMAL:
        return solution, None
    mask = np.asarray(instance.integer_mask, dtype=bool)
    fixed = solution.values.copy()
    lower = instance.base.lower.copy()
    upper = instance.base.upper.copy()
    lower[mask] = fixed[mask]
    upper[mask] = fixed[mask]
    polished = solve_lp(replace(instance.base, lower=lower, upper=upper))
    if polished.status is LpStatus.OPTIMAL:
        return solution, polished.values
    return solution, solution.values


def _infeasibility_diagnostic(need: NeedMatrix, params: PlanningParams) -> str:
    capacity = params.total_vaccinators * params.annual_capacity
    if capacity > need.total_visits:
        return (
            f"annual capacity {capacity} exceeds total need {need.total_visits}; "
            "with full utilization the coverage cap is violated - try fewer vaccinators"
        )
    if params.exact_equity:
        return (
            "exact equity is unattainable at integer vaccinator counts; "
            "allow a positive equity deviation"
        )
    return (
        f"equity deviation {params.equity_deviation:.3f} is too tight for "
        "integer vaccinator counts; widen the band"
    )


def solve_allocation(
    district: District,
    need: NeedMatrix,
    times: TravelTimeMatrix,
    params: PlanningParams,
    *,
    utilization: Utilization = "equality",
) -> SolveOutcome:
    """Solve the allocation model and translate the result into a plan."""
    if utilization == "at-most":
        return _solve_at_most(district, need, times, params)

    instance, layout = _build(need, times, district, params, aggregate_ages=True)
    solution, values = _solve_instance(instance)
    if solution.status is not LpStatus.OPTIMAL:
        return SolveOutcome(
            status=LpStatus.INFEASIBLE,
            plan=None,
            diagnostic=_infeasibility_diagnostic(need, params),
            nodes_explored=solution.nodes_explored,
        )
    plan = _extract_plan(district, need, times, params, layout, values)
    return SolveOutcome(status=LpStatus.OPTIMAL, plan=plan, nodes_explored=solution.nodes_explored)


def _solve_at_most(
    district: District,
    need: NeedMatrix,
    times: TravelTimeMatrix,
    params: PlanningParams,
) -> SolveOutcome:
    """Alternative formulation kept behind the utilization flag: workload at
    most capacity, met need maximized first, then travel minimized at that
    service level."""
    stage1, layout = _build(
        need, times, district, params, utilization="at-most", objective="met-need",
        aggregate_ages=True,
    )
    first, _ = _solve_instance(stage1)
    if first.status is not LpStatus.OPTIMAL:
        return SolveOutcome(
            status=LpStatus.INFEASIBLE,
            plan=None,
            diagnostic=_infeasibility_diagnostic(need, params),
            nodes_explored=first.nodes_explored,
        )
    met_scaled = -first.objective_value  # total shares weighted by need/K

    n_cols = layout.band_offset + (1 if layout.exact else 2)
    hold = np.zeros(n_cols)
    hold[layout.flow_offset : layout.band_offset] = layout.flow_need / float(
        params.annual_capacity
    )
    stage2, _ = _build(
        need,
        times,
        district,
        params,
        utilization="at-most",
        extra_rows=((hold, Relation.GE, met_scaled - 1e-9),),
        aggregate_ages=True,
    )
    second, values = _solve_instance(stage2)
    if second.status is not LpStatus.OPTIMAL:
        return SolveOutcome(
            status=LpStatus.INFEASIBLE,
            plan=None,
            diagnostic="service level from the first stage could not be reproduced",
            nodes_explored=first.nodes_explored + second.nodes_explored,
        )
    plan = _extract_plan(district, need, times, params, layout, values)
    return SolveOutcome(
        status=LpStatus.OPTIMAL,
        plan=plan,
        nodes_explored=first.nodes_explored + second.nodes_explored,
    )


def _extract_plan(
    district: District,
    need: NeedMatrix,
    times: TravelTimeMatrix,
    params: PlanningParams,
    layout: _Layout,
    values: np.ndarray,
) -> AllocationPlan:
    by_centre = {cid: int(round(values[i])) for i, cid in enumerate(layout.centre_ids)}
    by_locality = {l.id: 0 for l in district.localities}
    for centre in district.centres:
        by_locality[centre.locality_id] += by_centre[centre.id]

    shares = values[layout.flow_offset : layout.band_offset]
    flows: dict[tuple[str, str, AgeCategory], float] = {}
    coverage: dict[tuple[str, AgeCategory], float] = {}
    hours = 0.0
    for k, (cid, uid, age) in enumerate(layout.flow_keys):
        share = max(0.0, float(shares[k]))
        if age is None:
            ages = [a for a in AgeCategory if need.of(uid, a) > 0]
        else:
            ages = [age]
        for a in ages:
            visits = share * need.of(uid, a)
            flows[(cid, uid, a)] = visits
            entry = (uid, a)
            coverage[entry] = coverage.get(entry, 0.0) + share
            hours += (
                params.round_trip_factor * times.of(cid, uid) / 60.0
                * visits / params.children_per_day
            )
    coverage = {entry: min(1.0, max(0.0, v)) for entry, v in coverage.items()}

    return AllocationPlan(
        vaccinators_by_centre=by_centre,
        vaccinators_by_locality=by_locality,
        flows=flows,
        coverage=coverage,
        alpha_max=max(coverage.values()),
        alpha_min=min(coverage.values()),
        total_travel_hours=hours,
    )


def infeasibility_threshold(
    district: District,
    need: NeedMatrix,
    times: TravelTimeMatrix,
    params: PlanningParams,
    epsilon_grid: list[float],
) -> float | None:
    """Smallest grid deviation with a feasible banded solve, or None."""
    if any(b <= a for a, b in zip(epsilon_grid, epsilon_grid[1:])):
        raise ValueError("epsilon grid must be strictly ascending")
    for epsilon in epsilon_grid:
        probe = replace(params, equity_deviation=epsilon, exact_equity=False)
        outcome = solve_allocation(district, need, times, probe)
        if outcome.status is LpStatus.OPTIMAL:
            return epsilon
    return None


def check_plan_invariants(
    plan: AllocationPlan,
    district: District,
    need: NeedMatrix,
    params: PlanningParams,
) -> None:
    """Assert the allocation-plan contract; raises ValueError on violation."""
    if sum(plan.vaccinators_by_centre.values()) != params.total_vaccinators:
        raise ValueError("vaccinators by centre do not sum to the budget")
    for loc in district.localities:
        expected = sum(
            plan.vaccinators_by_centre[c.id]
            for c in district.centres
            if c.locality_id == loc.id
        )
        if plan.vaccinators_by_locality[loc.id] != expected:
            raise ValueError(f"locality total mismatch for {loc.id!r}")

    locality_of = {c.id: c.locality_id for c in district.centres}
    uc_locality = {u.id: u.locality_id for u in district.union_councils}
    flow_sum: dict[tuple[str, AgeCategory], float] = {}
    by_centre_flow: dict[str, float] = {}
    for (cid, uid, age), visits in plan.flows.items():
        if visits < -COVERAGE_TOL:
            raise ValueError("negative flow")
        if not params.cross_boundary and locality_of[cid] != uc_locality[uid]:
            raise ValueError("cross-boundary flow present in locality-bound plan")
        flow_sum[(uid, age)] = flow_sum.get((uid, age), 0.0) + visits
        by_centre_flow[cid] = by_centre_flow.get(cid, 0.0) + visits

    for cid, count in plan.vaccinators_by_centre.items():
        delivered = by_centre_flow.get(cid, 0.0)
        if abs(delivered - count * params.annual_capacity) > COVERAGE_TOL:
            raise ValueError(f"centre {cid!r} is not fully utilized")

    for entry, alpha in plan.coverage.items():
        if not -COVERAGE_TOL <= alpha <= 1.0 + COVERAGE_TOL:
            raise ValueError(f"coverage out of range for {entry}")
        target = alpha * need.of(entry[0], entry[1])
        if abs(flow_sum.get(entry, 0.0) - target) > COVERAGE_TOL:
            raise ValueError(f"flow/coverage mismatch for {entry}")

    spread = plan.alpha_max - plan.alpha_min
    if params.exact_equity:
        if spread > COVERAGE_TOL:
            raise ValueError("coverage is not uniform in exact-equity mode")
    elif spread > params.equity_deviation + COVERAGE_TOL:
        raise ValueError("coverage spread exceeds the allowed equity deviation")
