"""Canonical machine-readable documents shared by the CLI and the service.

Both front ends serialize through this module so that identical inputs
produce byte-identical payloads.
"""

from __future__ import annotations

import json

from .district import AgeCategory, District
from .models import PlanningParams, SolveOutcome
from .need import NeedMatrix
from .scenarios import ModelComparison, TradeoffTable
from .simplex import LpStatus
from .traveltime import TravelTimeMatrix

_FLOW_EPS = 1e-9


def canonical_json(document: dict) -> str:
    return json.dumps(document, indent=2) + "\n"


def params_document(params: PlanningParams) -> dict:
    return {
        "total_vaccinators": params.total_vaccinators,
        "children_per_day": params.children_per_day,
        "working_days": params.working_days,
        "equity_deviation": params.equity_deviation,
        "round_trip_factor": params.round_trip_factor,
        "cross_boundary": params.cross_boundary,
        "exact_equity": params.exact_equity,
        "annual_capacity_per_vaccinator": params.annual_capacity,
    }


def plan_document(outcome: SolveOutcome, params: PlanningParams) -> dict:
    doc: dict = {
        "kind": "allocation-plan",
        "model": 2 if params.cross_boundary else 1,
        "status": outcome.status.value,
        "params": params_document(params),
        "diagnostic": outcome.diagnostic,
        "plan": None,
    }
    plan = outcome.plan
    if plan is not None:
        doc["plan"] = {
            "vaccinators_by_centre": dict(plan.vaccinators_by_centre),
            "vaccinators_by_locality": dict(plan.vaccinators_by_locality),
            "alpha_max": plan.alpha_max,
            "alpha_min": plan.alpha_min,
            "total_travel_hours": plan.total_travel_hours,
            "coverage": [
                {"union_council": uc, "age": age.value, "alpha": alpha}
                for (uc, age), alpha in plan.coverage.items()
            ],
            "flows": [
                {"centre": c, "union_council": u, "age": a.value, "visits": visits}
                for (c, u, a), visits in plan.flows.items()
                if visits > _FLOW_EPS
            ],
        }
    return doc


def table_document(table: TradeoffTable, params: PlanningParams) -> dict:
    return {
        "kind": "tradeoff-table",
        "model": 2 if params.cross_boundary else 1,
        "params": params_document(params),
        "baseline_epsilon": table.baseline_epsilon,
        "rows": [
            {
                "epsilon": row.epsilon,
                "status": row.status.value,
                "travel_hours": row.travel_hours,
                "alpha_max": row.alpha_max,
                "alpha_min": row.alpha_min,
                "vaccinators_by_locality": row.vaccinators_by_locality,
            }
            for row in table.rows
        ],
    }


def table_text(table: TradeoffTable) -> str:
    """Delimited text rendering of a trade-off table."""
    lines = ["epsilon,status,travel_hours,alpha_max,alpha_min,vaccinators_by_locality"]
    for row in table.rows:
        if row.status is LpStatus.OPTIMAL:
            per_loc = ";".join(f"{k}={v}" for k, v in row.vaccinators_by_locality.items())
            lines.append(
                f"{row.epsilon},{row.status.value},{row.travel_hours:.2f},"
                f"{row.alpha_max:.4f},{row.alpha_min:.4f},{per_loc}"
            )
        else:
            lines.append(f"{row.epsilon},{row.status.value},,,,")
    return "\n".join(lines) + "\n"


def _outcome_summary(outcome: SolveOutcome) -> dict:
    if outcome.plan is None:
        return {"status": outcome.status.value, "diagnostic": outcome.diagnostic}
    plan = outcome.plan
    return {
        "status": outcome.status.value,
        "travel_hours": plan.total_travel_hours,
        "alpha_max": plan.alpha_max,
        "alpha_min": plan.alpha_min,
        "vaccinators_by_locality": dict(plan.vaccinators_by_locality),
    }


def comparison_document(comparison: ModelComparison, params: PlanningParams) -> dict:
    return {
        "kind": "model-comparison",
        "params": params_document(params),
        "epsilon": comparison.epsilon,
        "model1": _outcome_summary(comparison.model1),
        "model2": _outcome_summary(comparison.model2),
        "saving_percent": None
        if comparison.saving_percent_raw is None
        else {
            "raw": comparison.saving_percent_raw,
            "display": comparison.saving_percent_display,
        },
        "locality_shift": {
            loc: {"model1": before, "model2": after}
            for loc, (before, after) in comparison.locality_shift.items()
        },
    }


def district_summary(district: District, need: NeedMatrix, times: TravelTimeMatrix) -> dict:
    minutes = list(times.minutes.values())
    return {
        "kind": "district-summary",
        "name": district.name,
        "localities": [
            {
                "id": loc.id,
                "name": loc.name,
                "union_councils": sum(
                    1 for u in district.union_councils if u.locality_id == loc.id
                ),
                "centres": sum(1 for c in district.centres if c.locality_id == loc.id),
            }
            for loc in district.localities
        ],
        "union_councils": len(district.union_councils),
        "centres": len(district.centres),
        "age_categories": [a.value for a in AgeCategory],
        "schedule": {a.value: district.schedule[a] for a in AgeCategory},
        "need_total_visits": need.total_visits,
        "travel_minutes": {
            "min": min(minutes),
            "max": max(minutes),
            "mean": sum(minutes) / len(minutes),
        },
    }
