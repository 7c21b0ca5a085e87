"""Equitable vaccinator-allocation planning toolkit."""

from .branchbound import MipInstance, MipSolution, solve_mip
from .district import (
    AgeCategory,
    District,
    Locality,
    ParseError,
    RoadNetwork,
    Surface,
    UnionCouncil,
    VaccinationCentre,
    ValidationError,
    load_bundled_district,
    load_district,
    save_district,
)
from .models import (
    AllocationPlan,
    BuildError,
    MissingEntryError,
    PlanningParams,
    SolveOutcome,
    build_program,
    infeasibility_threshold,
    solve_allocation,
)
from .need import NeedMatrix, compute_need
from .scenarios import (
    DomainError,
    ModelComparison,
    TradeoffRow,
    TradeoffTable,
    compare_models,
    percent_saving,
    round_half_up,
    sweep,
)
from .simplex import (
    DimensionMismatch,
    LinearProgram,
    LpSolution,
    LpStatus,
    Relation,
    solve_lp,
)
from .synth import DEFAULT_SHAPE, SynthShape, generate_synthetic
from .traveltime import (
    SpeedModel,
    TravelTimeMatrix,
    UnreachableError,
    build_matrix,
    edge_time,
    shortest_time,
)

__all__ = [
    "AgeCategory",
    "AllocationPlan",
    "BuildError",
    "DEFAULT_SHAPE",
    "DimensionMismatch",
    "District",
    "DomainError",
    "LinearProgram",
    "Locality",
    "LpSolution",
    "LpStatus",
    "MipInstance",
    "MipSolution",
    "MissingEntryError",
    "ModelComparison",
    "NeedMatrix",
    "ParseError",
    "PlanningParams",
    "Relation",
    "RoadNetwork",
    "SolveOutcome",
    "SpeedModel",
    "Surface",
    "SynthShape",
    "TradeoffRow",
    "TradeoffTable",
    "TravelTimeMatrix",
    "UnionCouncil",
    "UnreachableError",
    "VaccinationCentre",
    "ValidationError",
    "build_matrix",
    "build_program",
    "compare_models",
    "compute_need",
    "edge_time",
    "generate_synthetic",
    "infeasibility_threshold",
    "load_bundled_district",
    "load_district",
    "percent_saving",
    "round_half_up",
    "save_district",
    "shortest_time",
    "solve_allocation",
    "solve_lp",
    "solve_mip",
    "sweep",
]
