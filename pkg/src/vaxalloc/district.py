"""Domain types for the planning universe and dataset ingestion/validation.

A district bundles localities, union councils, vaccination centres, a mixed
surface road network, and the per-age visit schedule. Values are treated as
immutable after construction; share them freely across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path

import jsonschema


class AgeCategory(str, Enum):
    """Child age bands covered by the immunization programme."""

    INFANT = "INFANT"
    PRESCHOOL = "PRESCHOOL"


class Surface(str, Enum):
    """Road surface kind; determines the assumed travel speed."""

    METALLED = "METALLED"
    UNMETALLED = "UNMETALLED"


#: Visits per child and year under the standard immunization schedule.
DEFAULT_SCHEDULE: dict[AgeCategory, int] = {
    AgeCategory.INFANT: 5,
    AgeCategory.PRESCHOOL: 1,
}


class ParseError(ValueError):
    """Raised when a dataset file is structurally malformed."""


class ValidationError(ValueError):
    """Raised when a dataset violates a domain invariant; names the offender."""


@dataclass(frozen=True)
class Locality:
    id: str
    name: str


@dataclass(frozen=True)
class UnionCouncil:
    id: str
    name: str
    locality_id: str
    population: dict[AgeCategory, int]
    network_node: str


@dataclass(frozen=True)
class VaccinationCentre:
    id: str
    name: str
    locality_id: str
    network_node: str


@dataclass(frozen=True)
class Edge:
    a: str
    b: str
    length_km: float
    surface: Surface


@dataclass(frozen=True)
class RoadNetwork:
    """Undirected road graph; parallel edges permitted, connectivity optional."""

    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]


@dataclass(frozen=True)
class District:
    name: str
    localities: tuple[Locality, ...]
    union_councils: tuple[UnionCouncil, ...]
    centres: tuple[VaccinationCentre, ...]
    network: RoadNetwork
    schedule: dict[AgeCategory, int] = field(default_factory=lambda: dict(DEFAULT_SCHEDULE))

    def locality_of_centre(self, centre_id: str) -> str:
        for c in self.centres:
            if c.id == centre_id:
                return c.locality_id
        raise KeyError(centre_id)

    def centres_in(self, locality_id: str) -> tuple[VaccinationCentre, ...]:
        return tuple(c for c in self.centres if c.locality_id == locality_id)


def _check_unique(kind: str, ids: list[str]) -> None:
    seen: set[str] = set()
    for i in ids:
        if i in seen:
            raise ValidationError(f"duplicate {kind} id {i!r}")
        seen.add(i)


def validate_district(district: District) -> None:
    """Check every domain invariant; raise ValidationError naming the offender."""
    if not district.union_councils:
        raise ValidationError("district has no union councils")
    if not district.centres:
        raise ValidationError("district has no vaccination centres")

    _check_unique("locality", [l.id for l in district.localities])
    _check_unique("union council", [u.id for u in district.union_councils])
    _check_unique("centre", [c.id for c in district.centres])
    _check_unique("network node", list(district.network.nodes))

    for category in AgeCategory:
        visits = district.schedule.get(category)
        if visits is None:
            raise ValidationError(f"schedule is missing age category {category.value}")
        if visits < 1:
            raise ValidationError(
                f"schedule for {category.value} must be at least 1 visit/year, got {visits}"
            )

    locality_ids = {l.id for l in district.localities}
    node_ids = set(district.network.nodes)

    for uc in district.union_councils:
        if uc.locality_id not in locality_ids:
            raise ValidationError(
                f"union council {uc.id!r} references unknown locality {uc.locality_id!r}"
            )
        if uc.network_node not in node_ids:
            raise ValidationError(
                f"union council {uc.id!r} references unknown network node {uc.network_node!r}"
            )
        for category in AgeCategory:
            count = uc.population.get(category)
            if count is None:
                raise ValidationError(
                    f"union council {uc.id!r} is missing population for {category.value}"
                )
            if count < 0:
                raise ValidationError(
                    f"union council {uc.id!r} has negative population for {category.value}"
                )

    for centre in district.centres:
        if centre.locality_id not in locality_ids:
            raise ValidationError(
                f"centre {centre.id!r} references unknown locality {centre.locality_id!r}"
            )
        if centre.network_node not in node_ids:
            raise ValidationError(
                f"centre {centre.id!r} references unknown network node {centre.network_node!r}"
            )

    for idx, edge in enumerate(district.network.edges):
        if edge.a not in node_ids or edge.b not in node_ids:
            raise ValidationError(
                f"edge #{idx} ({edge.a!r} - {edge.b!r}) references an unknown node"
            )
        if edge.length_km <= 0:
            raise ValidationError(
                f"edge #{idx} ({edge.a!r} - {edge.b!r}) has non-positive length {edge.length_km}"
            )


def _load_schema() -> dict:
    with resources.files("vaxalloc").joinpath("data/district.schema.json").open("r") as fh:
        return json.load(fh)


def district_from_dict(doc: dict) -> District:
    """Build a District from a parsed dataset document and validate it."""
    try:
        jsonschema.validate(doc, _load_schema())
    except jsonschema.ValidationError as exc:
        raise ParseError(f"dataset does not match schema: {exc.message}") from exc

    try:
        schedule = {AgeCategory(k): v for k, v in doc["schedule"].items()}
        localities = tuple(Locality(id=l["id"], name=l["name"]) for l in doc["localities"])
        union_councils = tuple(
            UnionCouncil(
                id=u["id"],
                name=u["name"],
                locality_id=u["locality_id"],
                population={AgeCategory(k): v for k, v in u["population"].items()},
                network_node=u["network_node"],
            )
            for u in doc["union_councils"]
        )
        centres = tuple(
            VaccinationCentre(
                id=c["id"],
                name=c["name"],
                locality_id=c["locality_id"],
                network_node=c["network_node"],
            )
            for c in doc["centres"]
        )
        network = RoadNetwork(
            nodes=tuple(doc["network"]["nodes"]),
            edges=tuple(
                Edge(
                    a=e["a"],
                    b=e["b"],
                    length_km=e["length_km"],
                    surface=Surface(e["surface"]),
                )
                for e in doc["network"]["edges"]
            ),
        )
    except ValueError as exc:
        raise ParseError(f"dataset contains an invalid enum value: {exc}") from exc

    district = District(
        name=doc.get("name", "district"),
        localities=localities,
        union_councils=union_councils,
        centres=centres,
        network=network,
        schedule=schedule,
    )
    validate_district(district)
    return district


def district_to_dict(district: District) -> dict:
    """Serialize a District to the dataset document structure."""
    return {
        "name": district.name,
        "schedule": {k.value: v for k, v in district.schedule.items()},
        "localities": [{"id": l.id, "name": l.name} for l in district.localities],
        "union_councils": [
            {
                "id": u.id,
                "name": u.name,
                "locality_id": u.locality_id,
                "population": {k.value: v for k, v in u.population.items()},
                "network_node": u.network_node,
            }
            for u in district.union_councils
        ],
        "centres": [
            {
                "id": c.id,
                "name": c.name,
                "locality_id": c.locality_id,
                "network_node": c.network_node,
            }
            for c in district.centres
        ],
        "network": {
            "nodes": list(district.network.nodes),
            "edges": [
                {
                    "a": e.a,
                    "b": e.b,
                    "length_km": e.length_km,
                    "surface": e.surface.value,
                }
                for e in district.network.edges
            ],
        },
    }


def load_district(path: str | Path) -> District:
    """Load and validate a dataset file.

    Raises ParseError for malformed files and ValidationError when a domain
    invariant is violated.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON: {exc}") from exc
    return district_from_dict(doc)


def save_district(district: District, path: str | Path) -> None:
    Path(path).write_text(dumps_district(district), encoding="utf-8")


def dumps_district(district: District) -> str:
    return json.dumps(district_to_dict(district), indent=2) + "\n"


def bundled_district_path() -> Path:
    """Path of the packaged example dataset."""
    return Path(str(resources.files("vaxalloc").joinpath("data/example_district.json")))


def load_bundled_district() -> District:
    return load_district(bundled_district_path())
