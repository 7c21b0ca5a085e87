from __future__ import annotations

import pytest

from vaxalloc.district import (
    AgeCategory,
    District,
    Edge,
    Locality,
    RoadNetwork,
    Surface,
    UnionCouncil,
    VaccinationCentre,
    load_bundled_district,
    validate_district,
)
from vaxalloc.need import compute_need
from vaxalloc.simplex import Relation, make_program, solve_lp
from vaxalloc.traveltime import build_matrix


@pytest.fixture(scope="session", autouse=True)
def warm_jit():
    # First solve compiles the pivot loop; keep that out of timed tests.
    solve_lp(make_program([-1.0], [[1.0]], [Relation.LE], [2.0]))


@pytest.fixture(scope="session")
def bundled():
    district = load_bundled_district()
    need = compute_need(district)
    times = build_matrix(district)
    return district, need, times


def make_single_pair_district(
    infants: int = 546,
    preschool: int = 0,
    length_km: float = 30.0,
    surface: Surface = Surface.METALLED,
) -> District:
    """One locality, one union council, one centre, one road edge."""
    district = District(
        name="single-pair",
        localities=(Locality("l1", "L1"),),
        union_councils=(
            UnionCouncil(
                "u1",
                "U1",
                "l1",
                {AgeCategory.INFANT: infants, AgeCategory.PRESCHOOL: preschool},
                "n-u1",
            ),
        ),
        centres=(VaccinationCentre("c1", "C1", "l1", "n-c1"),),
        network=RoadNetwork(
            nodes=("n-u1", "n-c1"),
            edges=(Edge("n-u1", "n-c1", length_km, surface),),
        ),
    )
    validate_district(district)
    return district


def make_threshold_district() -> District:
    """Two localities whose best integer vaccinator split leaves a 15-point
    coverage gap: locality A needs 2730 visits/year, locality B 3900, so with
    V=2 the (1,1) split gives coverages 0.50 and 0.35."""
    district = District(
        name="threshold",
        localities=(Locality("la", "A"), Locality("lb", "B")),
        union_councils=(
            UnionCouncil(
                "ua", "UA", "la",
                {AgeCategory.INFANT: 546, AgeCategory.PRESCHOOL: 0}, "n-ua",
            ),
            UnionCouncil(
                "ub", "UB", "lb",
                {AgeCategory.INFANT: 780, AgeCategory.PRESCHOOL: 0}, "n-ub",
            ),
        ),
        centres=(
            VaccinationCentre("ca", "CA", "la", "n-ca"),
            VaccinationCentre("cb", "CB", "lb", "n-cb"),
        ),
        network=RoadNetwork(
            nodes=("n-ua", "n-ub", "n-ca", "n-cb"),
            edges=(
                Edge("n-ua", "n-ca", 5.0, Surface.METALLED),
                Edge("n-ub", "n-cb", 6.0, Surface.METALLED),
                Edge("n-ca", "n-cb", 20.0, Surface.METALLED),
            ),
        ),
    )
    validate_district(district)
    return district


@pytest.fixture()
def single_pair_district() -> District:
    return make_single_pair_district()


@pytest.fixture()
def threshold_district() -> District:
    return make_threshold_district()
