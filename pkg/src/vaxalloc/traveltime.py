"""One-way travel-time matrix between centres and union councils.

Per-edge minutes come from the edge length and a per-surface speed; a
pair's travel time is the minimum over road paths of the summed edge
minutes.
"""

from __future__ import annotations

import heapq
import io
from dataclasses import dataclass

from .district import District, RoadNetwork, Surface


@dataclass(frozen=True)
class SpeedModel:
    """Assumed motorcycle speeds by road surface."""

    metalled_kmh: float = 30.0
    unmetalled_kmh: float = 10.0

    def __post_init__(self) -> None:
        if self.metalled_kmh <= 0 or self.unmetalled_kmh <= 0:
            raise ValueError("speeds must be positive")

    def kmh(self, surface: Surface) -> float:
        return self.metalled_kmh if surface is Surface.METALLED else self.unmetalled_kmh


DEFAULT_SPEEDS = SpeedModel()


class UnreachableError(ValueError):
    """No road path exists between the two nodes."""

    def __init__(self, origin: str, destination: str) -> None:
        super().__init__(f"no path between nodes {origin!r} and {destination!r}")
        self.origin = origin
        self.destination = destination


@dataclass(frozen=True)
class TravelTimeMatrix:
    """Complete one-way minutes for every (centre, union council) pair."""

    minutes: dict[tuple[str, str], float]

    def of(self, centre_id: str, uc_id: str) -> float:
        return self.minutes[(centre_id, uc_id)]


def edge_time(length_km: float, surface: Surface, speeds: SpeedModel = DEFAULT_SPEEDS) -> float:
    """Minutes to traverse one edge at the surface's assumed speed."""
    if length_km <= 0:
        raise ValueError(f"edge length must be positive, got {length_km}")
    return length_km / speeds.kmh(surface) * 60.0


def _adjacency(network: RoadNetwork, speeds: SpeedModel) -> dict[str, list[tuple[str, float]]]:
    adj: dict[str, list[tuple[str, float]]] = {node: [] for node in network.nodes}
    for edge in network.edges:
        minutes = edge_time(edge.length_km, edge.surface, speeds)
        adj[edge.a].append((edge.b, minutes))
        adj[edge.b].append((edge.a, minutes))
    return adj


def _dijkstra(
    adj: dict[str, list[tuple[str, float]]], source: str
) -> dict[str, float]:
    dist: dict[str, float] = {source: 0.0}
    heap: list[tuple[float, str]] = [(0.0, source)]
    done: set[str] = set()
    while heap:
        d, node = heapq.heappop(heap)
        if node in done:
            continue
        done.add(node)
        for neighbour, minutes in adj[node]:
            nd = d + minutes
            if nd < dist.get(neighbour, float("inf")):
                dist[neighbour] = nd
                heapq.heappush(heap, (nd, neighbour))
    return dist


def shortest_time(
    network: RoadNetwork,
    origin: str,
    destination: str,
    speeds: SpeedModel = DEFAULT_SPEEDS,
) -> float:
    """Minimum minutes over all paths; 0 when origin == destination."""
    known = set(network.nodes)
    for node in (origin, destination):
        if node not in known:
            raise KeyError(f"unknown network node {node!r}")
    if origin == destination:
        return 0.0
    dist = _dijkstra(_adjacency(network, speeds), origin)
    if destination not in dist:
        raise UnreachableError(origin, destination)
    return dist[destination]


def build_matrix(district: District, speeds: SpeedModel = DEFAULT_SPEEDS) -> TravelTimeMatrix:
    """All-or-nothing build; any disconnected pair aborts with UnreachableError.

    Rows (one per centre) are independent and could be computed concurrently;
    the sequential order used here fixes the reference result.
    """
    adj = _adjacency(district.network, speeds)
    minutes: dict[tuple[str, str], float] = {}
    for centre in district.centres:
        dist = _dijkstra(adj, centre.network_node)
        for uc in district.union_councils:
            if uc.network_node not in dist:
                raise UnreachableError(centre.network_node, uc.network_node)
            minutes[(centre.id, uc.id)] = dist[uc.network_node]
    return TravelTimeMatrix(minutes=minutes)


def matrix_table(district: District, matrix: TravelTimeMatrix) -> str:
    """Delimited text: rows are centres, columns union councils, 2-decimal minutes."""
    out = io.StringIO()
    out.write("centre," + ",".join(uc.id for uc in district.union_councils) + "\n")
    for centre in district.centres:
        row = ",".join(f"{matrix.of(centre.id, uc.id):.2f}" for uc in district.union_councils)
        out.write(f"{centre.id},{row}\n")
    return out.getvalue()
