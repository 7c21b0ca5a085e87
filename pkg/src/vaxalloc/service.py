"""HTTP planning service.

Read-only over one district loaded at startup; every request runs an
independent solve on immutable inputs, so concurrent identical requests
return identical payloads. Responses are serialized through the shared
document module and match the CLI byte for byte.
"""

from __future__ import annotations

from contextlib import asynccontextmanager
from dataclasses import dataclass

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from . import documents
from .district import District, bundled_district_path, load_district
from .models import PlanningParams, solve_allocation
from .need import NeedMatrix, compute_need
from .scenarios import compare_models, sweep
from .simplex import LpStatus
from .traveltime import TravelTimeMatrix, build_matrix


@dataclass
class _Loaded:
    district: District
    need: NeedMatrix
    times: TravelTimeMatrix


def _json_response(document: dict, status_code: int = 200) -> Response:
    return Response(
        content=documents.canonical_json(document),
        status_code=status_code,
        media_type="application/json",
    )


def _error(status_code: int, message: str) -> Response:
    return _json_response({"kind": "error", "error": message}, status_code)


def _parse_params(body: dict) -> PlanningParams | str:
    """Build PlanningParams from a request body; returns the violated
    invariant as a message string on failure."""
    if not isinstance(body, dict):
        return "request body must be a JSON object"
    model = body.get("model", 1)
    if model not in (1, 2):
        return "model must be 1 or 2"
    known = {
        "model",
        "total_vaccinators",
        "children_per_day",
        "working_days",
        "equity_deviation",
        "round_trip_factor",
        "exact_equity",
        "district",
        "epsilons",
    }
    unknown = set(body) - known
    if unknown:
        return f"unknown fields: {sorted(unknown)}"
    cross = model == 2
    try:
        return PlanningParams(
            total_vaccinators=int(body.get("total_vaccinators", 46)),
            children_per_day=int(body.get("children_per_day", 5)),
            working_days=int(body.get("working_days", 273)),
            equity_deviation=float(body.get("equity_deviation", 0.03)),
            round_trip_factor=float(body.get("round_trip_factor", 2.0)),
            cross_boundary=cross,
            exact_equity=body.get("exact_equity", None),
        )
    except (ValueError, TypeError) as exc:
        return str(exc)


def _check_district_ref(body: dict) -> str | None:
    ref = body.get("district")
    if ref in (None, "", "default"):
        return None
    return f"unknown district reference {ref!r}; this service hosts a single district"


def create_app(district_ref: str = "bundled") -> FastAPI:
    """App factory. The district loads in the lifespan startup hook;
    requests arriving earlier receive 503."""

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        path = bundled_district_path() if district_ref == "bundled" else district_ref
        district = load_district(path)
        app.state.loaded = _Loaded(
            district=district,
            need=compute_need(district),
            times=build_matrix(district),
        )
        yield

    app = FastAPI(title="vaxalloc planning service", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.loaded = None
    app.state.district_ref = district_ref

    @app.get("/district")
    def district_summary() -> Response:
        loaded: _Loaded | None = app.state.loaded
        if loaded is None:
            return _error(503, "district not loaded yet")
        return _json_response(
            documents.district_summary(loaded.district, loaded.need, loaded.times)
        )

    @app.post("/solve")
    async def solve(request: Request) -> Response:
        loaded: _Loaded | None = app.state.loaded
        if loaded is None:
            return _error(503, "district not loaded yet")
        try:
            body = await request.json()
        except Exception:
            return _error(400, "request body must be valid JSON")
        params = _parse_params(body)
        if isinstance(params, str):
            return _error(400, params)
        ref_problem = _check_district_ref(body)
        if ref_problem:
            return _error(400, ref_problem)
        outcome = solve_allocation(loaded.district, loaded.need, loaded.times, params)
        doc = documents.plan_document(outcome, params)
        if outcome.status is not LpStatus.OPTIMAL:
            return _json_response(doc, status_code=422)
        return _json_response(doc)

    @app.post("/sweep")
    async def run_sweep(request: Request) -> Response:
        loaded: _Loaded | None = app.state.loaded
        if loaded is None:
            return _error(503, "district not loaded yet")
        try:
            body = await request.json()
        except Exception:
            return _error(400, "request body must be valid JSON")
        params = _parse_params(body)
        if isinstance(params, str):
            return _error(400, params)
        ref_problem = _check_district_ref(body)
        if ref_problem:
            return _error(400, ref_problem)
        epsilons = body.get("epsilons")
        if not isinstance(epsilons, list) or not epsilons:
            return _error(400, "epsilons must be a non-empty list")
        try:
            epsilons = [float(e) for e in epsilons]
        except (TypeError, ValueError):
            return _error(400, "epsilons must be numbers")
        if any(b <= a for a, b in zip(epsilons, epsilons[1:])):
            return _error(400, "epsilons must be strictly ascending")
        if not all(0.0 <= e <= 1.0 for e in epsilons):
            return _error(400, "epsilons must lie in [0, 1]")
        table = sweep(loaded.district, loaded.need, loaded.times, params, epsilons)
        return _json_response(documents.table_document(table, params))

    @app.post("/compare")
    async def run_compare(request: Request) -> Response:
        loaded: _Loaded | None = app.state.loaded
        if loaded is None:
            return _error(503, "district not loaded yet")
        try:
            body = await request.json()
        except Exception:
            return _error(400, "request body must be valid JSON")
        if isinstance(body, dict):
            body = {**body, "model": 1}  # the comparison fixes both models itself
        params = _parse_params(body)
        if isinstance(params, str):
            return _error(400, params)
        ref_problem = _check_district_ref(body)
        if ref_problem:
            return _error(400, ref_problem)
        comparison = compare_models(loaded.district, loaded.need, loaded.times, params)
        return _json_response(documents.comparison_document(comparison, params))

    return app
