"""Mixed-integer solving: LP-relaxation branch-and-bound over the simplex core.

Branching tightens variable bounds, so every node is an ordinary linear
program. The search is deterministic: children are solved eagerly, the floor
branch is explored first by diving straight into it, and the backlog is
drained best-first on the node's relaxation bound with deeper nodes
preferred on ties. Diving exists to produce an incumbent early; the
best-first backlog preserves the optimality certificate.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, replace

import numpy as np

from .simplex import LinearProgram, LpStatus, solve_lp

INTEGRALITY_TOL = 1e-6
RELATIVE_GAP = 1e-9
DEFAULT_NODE_LIMIT = 400_000


class IterationLimitError(RuntimeError):
    """Node limit hit before any feasible integer point was found."""


@dataclass(frozen=True, eq=False)
class MipInstance:
    base: LinearProgram
    integer_mask: tuple[bool, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "integer_mask", tuple(bool(v) for v in self.integer_mask))
        if len(self.integer_mask) != self.base.n_variables:
            raise ValueError("integer mask width must equal the variable count")


@dataclass(frozen=True, eq=False)
class MipSolution:
    status: LpStatus
    values: np.ndarray
    objective_value: float
    nodes_explored: int
    hit_node_limit: bool = False


def _fractional_index(values: np.ndarray, mask: np.ndarray) -> int | None:
    """Masked variable whose fractional part is farthest from an integer;
    ties go to the lowest index. None when all are integral."""
    distance = np.abs(values - np.round(values))
    distance[~mask] = 0.0
    j = int(np.argmax(distance))
    if distance[j] <= INTEGRALITY_TOL:
        return None
    return j


def solve_mip(instance: MipInstance, node_limit: int = DEFAULT_NODE_LIMIT) -> MipSolution:
    """Exact deterministic branch-and-bound at INTEGRALITY_TOL/RELATIVE_GAP."""
    mask = np.asarray(instance.integer_mask, dtype=bool)
    nodes_explored = 0

    root = solve_lp(instance.base)
    nodes_explored += 1
    if root.status is LpStatus.INFEASIBLE:
        return MipSolution(LpStatus.INFEASIBLE, root.values, float("nan"), nodes_explored)
    if root.status is LpStatus.UNBOUNDED:
        raise ValueError("relaxation is unbounded in the branching variables")

    incumbent_values: np.ndarray | None = None
    incumbent_objective = math.inf

    def prune_threshold() -> float:
        if incumbent_values is None:
            return math.inf
        return incumbent_objective - RELATIVE_GAP * max(1.0, abs(incumbent_objective))

    # Backlog entries: (bound, -depth, sequence, program, lp values).
    sequence = 0
    heap: list[tuple[float, int, int, LinearProgram, np.ndarray]] = []
    current: tuple[float, int, LinearProgram, np.ndarray] | None = (
        root.objective_value,
        0,
        instance.base,
        root.values,
    )
    hit_limit = False

    while True:
        if current is None:
            if not heap:
                break
            bound, neg_depth, _, program, values = heapq.heappop(heap)
            if bound >= prune_threshold():
                break  # heap is bound-ordered: everything left prunes too
            current = (bound, neg_depth, program, values)
            continue

        bound, neg_depth, program, values = current
        current = None
        if bound >= prune_threshold():
            continue

        j = _fractional_index(values, mask)
        if j is None:
            snapped = values.copy()
            snapped[mask] = np.round(snapped[mask])
            objective = float(instance.base.objective @ snapped)
            if objective < incumbent_objective:
                incumbent_values = snapped
                incumbent_objective = objective
            continue

        if nodes_explored + 2 > node_limit:
            hit_limit = True
            break

        floor_value = math.floor(values[j])
        children: list[tuple[float, int, LinearProgram, np.ndarray]] = []
        for branch, bound_value in (("floor", floor_value), ("ceil", floor_value + 1)):
            if branch == "floor":
                upper = program.upper.copy()
                upper[j] = min(upper[j], bound_value)
                child = replace(program, upper=upper)
                if child.lower[j] > upper[j]:
                    continue
            else:
                lower = program.lower.copy()
                lower[j] = max(lower[j], bound_value)
                child = replace(program, lower=lower)
                if lower[j] > child.upper[j]:
                    continue
            child_solution = solve_lp(child)
            nodes_explored += 1
            if child_solution.status is not LpStatus.OPTIMAL:
                continue
            if child_solution.objective_value >= prune_threshold():
                continue
            children.append(
                (child_solution.objective_value, neg_depth - 1, child, child_solution.values)
            )

        if children:
            # Dive into the floor branch when it survived (it is first).
            current = children[0]
            for other in children[1:]:
                sequence += 1
                heapq.heappush(heap, (other[0], other[1], sequence, other[2], other[3]))

    if incumbent_values is None:
        if hit_limit:
            raise IterationLimitError(
                f"node limit {node_limit} reached with no integer-feasible incumbent"
            )
        return MipSolution(
            LpStatus.INFEASIBLE, np.full(len(mask), np.nan), float("nan"), nodes_explored
        )
    return MipSolution(
        LpStatus.OPTIMAL,
        incumbent_values,
        incumbent_objective,
        nodes_explored,
        hit_node_limit=hit_limit,
    )
