from __future__ import annotations

from dataclasses import replace

import pytest

from vaxalloc.models import PlanningParams, solve_allocation
from vaxalloc.need import compute_need
from vaxalloc.scenarios import (
    DomainError,
    TradeoffRow,
    TradeoffTable,
    compare_models,
    percent_saving,
    round_half_up,
    sweep,
)
from vaxalloc.simplex import LpStatus
from vaxalloc.traveltime import build_matrix

from .conftest import make_single_pair_district


def test_percent_saving_reported_values():
    assert round_half_up(percent_saving(22370, 19132), 1) == 14.5
    assert round_half_up(percent_saving(22370, 19192), 1) == 14.2


def test_percent_saving_identity_and_sign():
    assert percent_saving(100.0, 100.0) == 0.0
    assert percent_saving(100.0, 120.0) == pytest.approx(-20.0)


def test_percent_saving_domain_error():
    with pytest.raises(DomainError):
        percent_saving(0.0, 5.0)
    with pytest.raises(DomainError):
        percent_saving(-3.0, 5.0)


def test_round_half_up_is_half_up():
    assert round_half_up(13.25, 1) == 13.3
    assert round_half_up(14.45, 1) == 14.5
    assert round_half_up(-1.25, 1) == -1.3


def test_sweep_single_epsilon_matches_solve(threshold_district):
    district = threshold_district
    need = compute_need(district)
    times = build_matrix(district)
    params = PlanningParams(total_vaccinators=2, cross_boundary=False)
    table = sweep(district, need, times, params, [0.15])
    assert len(table.rows) == 1
    outcome = solve_allocation(
        district, need, times, replace(params, equity_deviation=0.15, exact_equity=False)
    )
    row = table.rows[0]
    assert row.status is LpStatus.OPTIMAL
    assert row.travel_hours == pytest.approx(outcome.plan.total_travel_hours)
    assert row.alpha_max == pytest.approx(outcome.plan.alpha_max)
    assert row.vaccinators_by_locality == outcome.plan.vaccinators_by_locality
    assert table.baseline_epsilon == 0.15


def test_sweep_keeps_infeasible_rows(threshold_district):
    district = threshold_district
    need = compute_need(district)
    times = build_matrix(district)
    params = PlanningParams(total_vaccinators=2, cross_boundary=False)
    table = sweep(district, need, times, params, [0.05, 0.10, 0.15, 0.30])
    statuses = [row.status for row in table.rows]
    assert statuses[:2] == [LpStatus.INFEASIBLE, LpStatus.INFEASIBLE]
    assert statuses[2:] == [LpStatus.OPTIMAL, LpStatus.OPTIMAL]
    assert table.baseline_epsilon == 0.15
    hours = [row.travel_hours for row in table.rows if row.status is LpStatus.OPTIMAL]
    assert hours == sorted(hours, reverse=True) or all(
        b <= a + 1e-6 for a, b in zip(hours, hours[1:])
    )


def test_sweep_validates_grid(threshold_district):
    district = threshold_district
    need = compute_need(district)
    times = build_matrix(district)
    params = PlanningParams(total_vaccinators=2)
    with pytest.raises(ValueError):
        sweep(district, need, times, params, [])
    with pytest.raises(ValueError):
        sweep(district, need, times, params, [0.2, 0.1])


def test_tradeoff_row_invariant():
    with pytest.raises(ValueError):
        TradeoffRow(
            epsilon=0.05,
            status=LpStatus.OPTIMAL,
            travel_hours=10.0,
            alpha_max=0.9,
            alpha_min=0.5,
            vaccinators_by_locality={},
        )


def test_tradeoff_table_monotonicity_invariant():
    good = TradeoffRow(0.05, LpStatus.OPTIMAL, 10.0, 0.6, 0.58, {})
    worse = TradeoffRow(0.10, LpStatus.OPTIMAL, 20.0, 0.65, 0.58, {})
    with pytest.raises(ValueError):
        TradeoffTable(rows=(good, worse), baseline_epsilon=0.05)


def test_compare_models_on_threshold_fixture(threshold_district):
    district = threshold_district
    need = compute_need(district)
    times = build_matrix(district)
    params = PlanningParams(total_vaccinators=2, equity_deviation=0.05)
    comparison = compare_models(district, need, times, params)
    # Model 1 cannot reach a 5-point band; pooling across the boundary can.
    assert comparison.model1.status is LpStatus.INFEASIBLE
    assert comparison.model2.status is LpStatus.OPTIMAL
    assert comparison.saving_percent_raw is None
    assert comparison.locality_shift["la"][0] is None
    assert comparison.locality_shift["la"][1] is not None


def test_compare_models_single_locality_coincide():
    # With one locality and a zero band, the two delivery regimes describe
    # the same feasible set, so the saving vanishes.
    district = make_single_pair_district(infants=546, preschool=0)
    need = compute_need(district)
    times = build_matrix(district)
    params = PlanningParams(total_vaccinators=1, equity_deviation=0.0)
    comparison = compare_models(district, need, times, params)
    assert comparison.model1.status is LpStatus.OPTIMAL
    assert comparison.model2.status is LpStatus.OPTIMAL
    assert comparison.saving_percent_raw == pytest.approx(0.0, abs=1e-6)


def test_compare_models_saving_on_bundled(bundled):
    district, need, times = bundled
    params = PlanningParams(total_vaccinators=46, equity_deviation=0.03)
    comparison = compare_models(district, need, times, params)
    assert comparison.model1.status is LpStatus.OPTIMAL
    assert comparison.model2.status is LpStatus.OPTIMAL
    assert comparison.saving_percent_raw >= -1e-6
    assert comparison.saving_percent_display == round_half_up(comparison.saving_percent_raw, 1)
    m1 = sum(v for v, _ in comparison.locality_shift.values() if v is not None)
    m2 = sum(v for _, v in comparison.locality_shift.values() if v is not None)
    assert m1 == 46 and m2 == 46
