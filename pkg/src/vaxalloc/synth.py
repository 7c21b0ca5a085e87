"""Deterministic synthetic district generator.

The default shape mimics the bundled example district: 3 localities, 25 union
councils, and 16 vaccination centres on a connected mixed-surface road
network. Output is a pure function of (seed, shape).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .district import (
    AgeCategory,
    DEFAULT_SCHEDULE,
    District,
    Edge,
    Locality,
    RoadNetwork,
    Surface,
    UnionCouncil,
    VaccinationCentre,
    validate_district,
)


@dataclass(frozen=True)
class SynthShape:
    n_localities: int = 3
    n_ucs: int = 25
    n_centres: int = 16
    infant_population: tuple[int, int] = (450, 1000)
    preschool_population: tuple[int, int] = (400, 1100)

    def validate(self) -> None:
        if min(self.n_localities, self.n_ucs, self.n_centres) < 1:
            raise ValueError("shape counts must all be at least 1")
        for lo, hi in (self.infant_population, self.preschool_population):
            if lo < 0 or hi < lo:
                raise ValueError(f"population range ({lo}, {hi}) must be 0 <= lo <= hi")


DEFAULT_SHAPE = SynthShape()


def generate_synthetic(seed: int, shape: SynthShape = DEFAULT_SHAPE) -> District:
    """Generate a valid district, deterministic in (seed, shape)."""
    shape.validate()
    rng = random.Random(seed)

    localities = tuple(
        Locality(id=f"loc{i + 1:02d}", name=f"Locality {i + 1}")
        for i in range(shape.n_localities)
    )

    # Round-robin assignment keeps each locality populated with both
    # union councils and centres whenever counts allow.
    uc_locality = [localities[i % shape.n_localities].id for i in range(shape.n_ucs)]
    centre_locality = [localities[i % shape.n_localities].id for i in range(shape.n_centres)]

    nodes: list[str] = []
    uc_nodes = [f"n-uc{i + 1:02d}" for i in range(shape.n_ucs)]
    centre_nodes = [f"n-vc{i + 1:02d}" for i in range(shape.n_centres)]
    nodes.extend(uc_nodes)
    nodes.extend(centre_nodes)

    by_locality: dict[str, list[str]] = {l.id: [] for l in localities}
    for node, loc in zip(uc_nodes, uc_locality):
        by_locality[loc].append(node)
    for node, loc in zip(centre_nodes, centre_locality):
        by_locality[loc].append(node)

    edges: list[Edge] = []

    def random_edge(a: str, b: str, short: bool) -> Edge:
        if short:
            length = round(rng.uniform(2.0, 12.0), 1)
            surface = Surface.METALLED if rng.random() < 0.75 else Surface.UNMETALLED
        else:
            length = round(rng.uniform(14.0, 42.0), 1)
            surface = Surface.METALLED if rng.random() < 0.55 else Surface.UNMETALLED
        return Edge(a=a, b=b, length_km=length, surface=surface)

    # Random spanning tree per locality; a mix of short and long links gives
    # the travel-time heterogeneity the planning models trade against.
    for loc in localities:
        members = by_locality[loc.id]
        for i in range(1, len(members)):
            anchor = members[rng.randrange(i)]
            edges.append(random_edge(anchor, members[i], short=rng.random() < 0.6))

    # Chain the localities so the whole network is connected.
    anchors = [by_locality[l.id][0] for l in localities if by_locality[l.id]]
    for a, b in zip(anchors, anchors[1:]):
        edges.append(Edge(a=a, b=b, length_km=round(rng.uniform(18.0, 36.0), 1), surface=Surface.METALLED))

    # A few extra links to create alternative routes.
    n_extra = max(1, (shape.n_ucs + shape.n_centres) // 5)
    for _ in range(n_extra):
        a, b = rng.sample(nodes, 2)
        edges.append(random_edge(a, b, short=rng.random() < 0.5))

    union_councils = tuple(
        UnionCouncil(
            id=f"uc{i + 1:02d}",
            name=f"Union Council {i + 1}",
            locality_id=uc_locality[i],
            population={
                AgeCategory.INFANT: rng.randint(*shape.infant_population),
                AgeCategory.PRESCHOOL: rng.randint(*shape.preschool_population),
            },
            network_node=uc_nodes[i],
        )
        for i in range(shape.n_ucs)
    )
    centres = tuple(
        VaccinationCentre(
            id=f"vc{i + 1:02d}",
            name=f"Vaccination Centre {i + 1}",
            locality_id=centre_locality[i],
            network_node=centre_nodes[i],
        )
        for i in range(shape.n_centres)
    )

    district = District(
        name=f"synthetic-{seed}",
        localities=localities,
        union_councils=union_councils,
        centres=centres,
        network=RoadNetwork(nodes=tuple(nodes), edges=tuple(edges)),
        schedule=dict(DEFAULT_SCHEDULE),
    )
    validate_district(district)
    return district
