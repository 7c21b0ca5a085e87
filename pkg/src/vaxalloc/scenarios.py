"""Equity-deviation sweeps, model comparison, and savings arithmetic."""

from __future__ import annotations

from dataclasses import dataclass, replace
from decimal import ROUND_HALF_UP, Decimal

from .district import District
from .models import PlanningParams, SolveOutcome, solve_allocation
from .need import NeedMatrix
from .simplex import LpStatus
from .traveltime import TravelTimeMatrix

_SPREAD_TOL = 1e-6


class DomainError(ValueError):
    """Savings are undefined for a non-positive reference."""


@dataclass(frozen=True)
class TradeoffRow:
    epsilon: float
    status: LpStatus
    travel_hours: float | None
    alpha_max: float | None
    alpha_min: float | None
    vaccinators_by_locality: dict[str, int] | None

    def __post_init__(self) -> None:
        if self.status is LpStatus.OPTIMAL:
            spread = self.alpha_max - self.alpha_min
            if spread > self.epsilon + _SPREAD_TOL:
                raise ValueError(
                    f"coverage spread {spread:.6f} exceeds deviation {self.epsilon:.6f}"
                )


@dataclass(frozen=True)
class TradeoffTable:
    rows: tuple[TradeoffRow, ...]
    baseline_epsilon: float | None

    def __post_init__(self) -> None:
        previous: float | None = None
        for row in self.rows:
            if row.status is not LpStatus.OPTIMAL:
                continue
            if previous is not None and row.travel_hours > previous + _SPREAD_TOL:
                raise ValueError("travel hours must be non-increasing across optimal rows")
            previous = row.travel_hours


def sweep(
    district: District,
    need: NeedMatrix,
    times: TravelTimeMatrix,
    params: PlanningParams,
    epsilons: list[float],
) -> TradeoffTable:
    """One independent banded solve per deviation; infeasible rows are kept."""
    if not epsilons:
        raise ValueError("epsilon list must not be empty")
    if any(b <= a for a, b in zip(epsilons, epsilons[1:])):
        raise ValueError("epsilon list must be strictly ascending")

    rows: list[TradeoffRow] = []
    baseline: float | None = None
    for epsilon in epsilons:
        outcome = solve_allocation(
            district, need, times, replace(params, equity_deviation=epsilon, exact_equity=False)
        )
        if outcome.status is LpStatus.OPTIMAL:
            plan = outcome.plan
            rows.append(
                TradeoffRow(
                    epsilon=epsilon,
                    status=outcome.status,
                    travel_hours=plan.total_travel_hours,
                    alpha_max=plan.alpha_max,
                    alpha_min=plan.alpha_min,
                    vaccinators_by_locality=dict(plan.vaccinators_by_locality),
                )
            )
            if baseline is None:
                baseline = epsilon
        else:
            rows.append(
                TradeoffRow(
                    epsilon=epsilon,
                    status=outcome.status,
                    travel_hours=None,
                    alpha_max=None,
                    alpha_min=None,
                    vaccinators_by_locality=None,
                )
            )
    return TradeoffTable(rows=tuple(rows), baseline_epsilon=baseline)


def percent_saving(reference_hours: float, candidate_hours: float) -> float:
    """Raw percentage saved relative to the reference (may be negative)."""
    if reference_hours <= 0:
        raise DomainError(f"reference hours must be positive, got {reference_hours}")
    return 100.0 * (reference_hours - candidate_hours) / reference_hours


def round_half_up(value: float, digits: int = 1) -> float:
    """Half-up display rounding (13.25 -> 13.3 at one digit)."""
    quantum = Decimal(1).scaleb(-digits)
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class ModelComparison:
    """Locality-bound Model 1 at the requested deviation versus
    cross-boundary Model 2 at exact equity."""

    epsilon: float
    model1: SolveOutcome
    model2: SolveOutcome
    saving_percent_raw: float | None
    saving_percent_display: float | None
    locality_shift: dict[str, tuple[int | None, int | None]]


def compare_models(
    district: District,
    need: NeedMatrix,
    times: TravelTimeMatrix,
    params: PlanningParams,
) -> ModelComparison:
    model1 = solve_allocation(
        district, need, times, replace(params, cross_boundary=False, exact_equity=False)
    )
    model2 = solve_allocation(
        district, need, times, replace(params, cross_boundary=True, exact_equity=True)
    )

    saving_raw: float | None = None
    saving_display: float | None = None
    if model1.status is LpStatus.OPTIMAL and model2.status is LpStatus.OPTIMAL:
        saving_raw = percent_saving(
            model1.plan.total_travel_hours, model2.plan.total_travel_hours
        )
        saving_display = round_half_up(saving_raw, 1)

    shift: dict[str, tuple[int | None, int | None]] = {}
    for loc in district.localities:
        before = model1.plan.vaccinators_by_locality[loc.id] if model1.plan else None
        after = model2.plan.vaccinators_by_locality[loc.id] if model2.plan else None
        shift[loc.id] = (before, after)

    return ModelComparison(
        epsilon=params.equity_deviation,
        model1=model1,
        model2=model2,
        saving_percent_raw=saving_raw,
        saving_percent_display=saving_display,
        locality_shift=shift,
    )
