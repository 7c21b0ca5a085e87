"""Command-line entry point.

Every subcommand is a thin composition of library calls: load/validate a
district, derive need and travel times, run a solve/sweep/comparison, and
serialize through the shared document module. Machine-readable JSON goes to
stdout; human summaries sit behind --pretty.

Exit codes: 0 success (an INFEASIBLE solve is still a success, with the
status in the output), 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import documents
from .district import (
    ParseError,
    ValidationError,
    bundled_district_path,
    dumps_district,
    load_district,
)
from .models import (
    BuildError,
    MissingEntryError,
    PlanningParams,
    solve_allocation,
)
from .need import compute_need, need_table
from .scenarios import compare_models, sweep
from .simplex import format_program
from .synth import SynthShape, generate_synthetic
from .traveltime import SpeedModel, UnreachableError, build_matrix, matrix_table

log = logging.getLogger("vaxalloc")

PAPER_GRID = [0.03, 0.05, 0.10, 0.15, 0.20, 0.25]


def _positive_range(text: str) -> tuple[int, int]:
    lo, hi = (int(part) for part in text.split(","))
    return lo, hi


def _epsilon_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",")]


def _district_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "district",
        help="district dataset file, or 'bundled' for the packaged example",
    )


def _params_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--vaccinators", "-V", type=int, default=46, help="total vaccinators")
    parser.add_argument("--epsilon", type=float, default=0.03, help="allowed coverage spread")
    parser.add_argument("--children-per-day", type=int, default=5)
    parser.add_argument("--working-days", type=int, default=273)
    parser.add_argument("--round-trip", type=float, default=2.0, help="round-trip multiplier")


def _speeds_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--metalled-kmh", type=float, default=30.0)
    parser.add_argument("--unmetalled-kmh", type=float, default=10.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vaxalloc",
        description="Equitable vaccinator allocation planning",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="load a dataset and report its shape")
    _district_arg(p)

    p = sub.add_parser("need", help="annual immunization need per union council")
    _district_arg(p)
    p.add_argument("--output", "-o", help="write to file instead of stdout")

    p = sub.add_parser("times", help="one-way travel-time matrix in minutes")
    _district_arg(p)
    _speeds_args(p)
    p.add_argument("--output", "-o", help="write to file instead of stdout")

    p = sub.add_parser("solve", help="solve one allocation model")
    _district_arg(p)
    p.add_argument("--model", type=int, choices=(1, 2), default=1,
                   help="1 = locality-bound, 2 = cross-boundary")
    _params_args(p)
    _speeds_args(p)
    p.add_argument("--banded", action="store_true",
                   help="use the equity band even for model 2 (default: model 2 is exact)")
    p.add_argument("--pretty", action="store_true", help="human-readable summary")
    p.add_argument("--dump-lp", action="store_true",
                   help="write the model as an equation listing to stderr")

    p = sub.add_parser("sweep", help="trade-off table over equity deviations")
    _district_arg(p)
    p.add_argument("--model", type=int, choices=(1, 2), default=1)
    _params_args(p)
    _speeds_args(p)
    p.add_argument("--epsilons", type=_epsilon_list,
                   default=PAPER_GRID,
                   help="comma-separated ascending deviations (default 3,5,10,15,20,25%%)")
    p.add_argument("--pretty", action="store_true", help="delimited text instead of JSON")

    p = sub.add_parser("compare", help="model 1 at the given deviation vs model 2 exact")
    _district_arg(p)
    _params_args(p)
    _speeds_args(p)
    p.add_argument("--pretty", action="store_true")

    p = sub.add_parser("synth", help="generate a synthetic district dataset")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--localities", type=int, default=3)
    p.add_argument("--ucs", type=int, default=25)
    p.add_argument("--centres", type=int, default=16)
    p.add_argument("--infant-range", type=_positive_range, default=(450, 1000),
                   metavar="LO,HI")
    p.add_argument("--preschool-range", type=_positive_range, default=(400, 1100),
                   metavar="LO,HI")
    p.add_argument("--output", "-o", help="write to file instead of stdout")

    p = sub.add_parser("serve", help="run the planning HTTP service")
    p.add_argument("--district", default="bundled")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _load(ref: str):
    path = bundled_district_path() if ref == "bundled" else ref
    return load_district(path)


def _params_from(args: argparse.Namespace, cross_boundary: bool, exact: bool) -> PlanningParams:
    return PlanningParams(
        total_vaccinators=args.vaccinators,
        children_per_day=args.children_per_day,
        working_days=args.working_days,
        equity_deviation=args.epsilon,
        round_trip_factor=args.round_trip,
        cross_boundary=cross_boundary,
        exact_equity=exact,
    )


def _speeds_from(args: argparse.Namespace) -> SpeedModel:
    return SpeedModel(metalled_kmh=args.metalled_kmh, unmetalled_kmh=args.unmetalled_kmh)


def _pretty_plan(doc: dict) -> str:
    lines = [f"model {doc['model']}  status {doc['status']}"]
    if doc["plan"] is None:
        lines.append(f"diagnostic: {doc['diagnostic']}")
    else:
        plan = doc["plan"]
        lines.append(f"total travel hours/year: {plan['total_travel_hours']:.1f}")
        lines.append(
            f"coverage: alpha_max {plan['alpha_max']:.4f}  alpha_min {plan['alpha_min']:.4f}"
        )
        lines.append("vaccinators by locality:")
        for loc, count in plan["vaccinators_by_locality"].items():
            lines.append(f"  {loc}: {count}")
    return "\n".join(lines) + "\n"


def _run(args: argparse.Namespace) -> int:
    if args.command == "synth":
        shape = SynthShape(
            n_localities=args.localities,
            n_ucs=args.ucs,
            n_centres=args.centres,
            infant_population=args.infant_range,
            preschool_population=args.preschool_range,
        )
        text = dumps_district(generate_synthetic(args.seed, shape))
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0

    if args.command == "serve":
        import uvicorn

        from .service import create_app

        app = create_app(args.district)
        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    district = _load(args.district)

    if args.command == "validate":
        need = compute_need(district)
        sys.stdout.write(
            f"{district.name}: {len(district.localities)} localities, "
            f"{len(district.union_councils)} union councils, "
            f"{len(district.centres)} centres, "
            f"{len(district.network.edges)} road edges, "
            f"total need {need.total_visits} visits/year\nOK\n"
        )
        return 0

    if args.command == "need":
        text = need_table(district, compute_need(district))
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0

    if args.command == "times":
        text = matrix_table(district, build_matrix(district, _speeds_from(args)))
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0

    need = compute_need(district)
    times = build_matrix(district, _speeds_from(args))

    if args.command == "solve":
        cross = args.model == 2
        exact = cross and not args.banded
        params = _params_from(args, cross, exact)
        if args.dump_lp:
            from .models import build_program

            sys.stderr.write(format_program(build_program(need, times, district, params).base))
            sys.stderr.write("\n")
        outcome = solve_allocation(district, need, times, params)
        doc = documents.plan_document(outcome, params)
        sys.stdout.write(_pretty_plan(doc) if args.pretty else documents.canonical_json(doc))
        return 0

    if args.command == "sweep":
        cross = args.model == 2
        params = _params_from(args, cross, exact=False)
        table = sweep(district, need, times, params, args.epsilons)
        if args.pretty:
            sys.stdout.write(documents.table_text(table))
        else:
            sys.stdout.write(documents.canonical_json(documents.table_document(table, params)))
        return 0

    if args.command == "compare":
        params = _params_from(args, cross_boundary=False, exact=False)
        comparison = compare_models(district, need, times, params)
        doc = documents.comparison_document(comparison, params)
        if args.pretty:
            lines = [f"model 1 (banded, eps={comparison.epsilon}): {doc['model1']['status']}"]
            if "travel_hours" in doc["model1"]:
                lines.append(f"  travel hours {doc['model1']['travel_hours']:.1f}")
            lines.append(f"model 2 (exact equity): {doc['model2']['status']}")
            if "travel_hours" in doc["model2"]:
                lines.append(f"  travel hours {doc['model2']['travel_hours']:.1f}")
            if doc["saving_percent"] is not None:
                lines.append(f"saving: {doc['saving_percent']['display']}%")
            sys.stdout.write("\n".join(lines) + "\n")
        else:
            sys.stdout.write(documents.canonical_json(doc))
        return 0

    raise AssertionError(f"unhandled command {args.command}")


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=os.environ.get("VAXALLOC_LOG", "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except (
        ParseError,
        ValidationError,
        BuildError,
        MissingEntryError,
        UnreachableError,
        ValueError,
        OSError,
    ) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
