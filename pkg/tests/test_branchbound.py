from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from vaxalloc.branchbound import (
    IterationLimitError,
    MipInstance,
    MipSolution,
    solve_mip,
)
from vaxalloc.simplex import LpStatus, Relation, make_program, solve_lp


def brute_force(instance: MipInstance) -> tuple[str, float | None]:
    """Enumerate every integer assignment of the (fully masked, boxed)
    variables and evaluate feasibility directly from the rows."""
    program = instance.base
    n = program.n_variables
    assert all(instance.integer_mask), "oracle assumes pure-integer instances"
    ranges = [
        range(int(np.ceil(program.lower[j])), int(np.floor(program.upper[j])) + 1)
        for j in range(n)
    ]
    best: float | None = None
    for point in itertools.product(*ranges):
        x = np.array(point, dtype=float)
        lhs = program.rows @ x
        ok = True
        for i, rel in enumerate(program.relations):
            if rel is Relation.LE and lhs[i] > program.rhs[i] + 1e-9:
                ok = False
            elif rel is Relation.GE and lhs[i] < program.rhs[i] - 1e-9:
                ok = False
            elif rel is Relation.EQ and abs(lhs[i] - program.rhs[i]) > 1e-9:
                ok = False
            if not ok:
                break
        if not ok:
            continue
        value = float(program.objective @ x)
        if best is None or value < best:
            best = value
    if best is None:
        return "INFEASIBLE", None
    return "OPTIMAL", best


def random_instance(rng: random.Random) -> MipInstance:
    n = rng.randint(1, 4)
    m = rng.randint(1, 4)
    objective = [rng.uniform(-5, 5) for _ in range(n)]
    rows = [[rng.choice([0, 1, -1, 2, -2]) * rng.uniform(0.5, 2.0) for _ in range(n)] for _ in range(m)]
    relations = [rng.choice([Relation.LE, Relation.GE]) for _ in range(m)]
    rhs = [rng.uniform(-8, 12) for _ in range(m)]
    program = make_program(objective, rows, relations, rhs, upper=[6.0] * n)
    return MipInstance(base=program, integer_mask=(True,) * n)


def test_floor_of_relaxation():
    program = make_program([-1.0], [[1.0]], [Relation.LE], [2.5])
    solution = solve_mip(MipInstance(base=program, integer_mask=(True,)))
    assert solution.status is LpStatus.OPTIMAL
    assert solution.values[0] == pytest.approx(2.0)
    assert solution.objective_value == pytest.approx(-2.0)


def test_integral_root_explores_one_node():
    program = make_program([-1.0], [[1.0]], [Relation.LE], [3.0])
    solution = solve_mip(MipInstance(base=program, integer_mask=(True,)))
    assert solution.status is LpStatus.OPTIMAL
    assert solution.nodes_explored == 1


def test_infeasible_instance():
    program = make_program([1.0], [[1.0], [1.0]], [Relation.GE, Relation.LE], [2, 1])
    solution = solve_mip(MipInstance(base=program, integer_mask=(True,)))
    assert solution.status is LpStatus.INFEASIBLE


def test_integer_gap_infeasibility():
    # 0.4 <= x <= 0.6 has no integer point.
    program = make_program([1.0], [[1.0], [1.0]], [Relation.GE, Relation.LE], [0.4, 0.6])
    solution = solve_mip(MipInstance(base=program, integer_mask=(True,)))
    assert solution.status is LpStatus.INFEASIBLE


def test_mask_width_checked():
    program = make_program([1.0], [[1.0]], [Relation.LE], [1])
    with pytest.raises(ValueError):
        MipInstance(base=program, integer_mask=(True, False))


def test_random_instances_match_brute_force():
    rng = random.Random(424242)
    optimal = 0
    infeasible = 0
    for _ in range(120):
        instance = random_instance(rng)
        expected_status, expected_value = brute_force(instance)
        solution = solve_mip(instance)
        assert solution.status.value == expected_status
        if expected_status == "OPTIMAL":
            assert solution.objective_value == pytest.approx(expected_value, abs=1e-6)
            assert np.allclose(solution.values, np.round(solution.values), atol=1e-9)
            optimal += 1
        else:
            infeasible += 1
    assert optimal >= 40 and infeasible >= 5


def test_mixed_continuous_and_integer():
    # One integer, one continuous; enumerate the integer and solve the rest.
    program = make_program(
        [-2.0, -1.0],
        [[1.0, 1.0], [1.0, 0.0]],
        [Relation.LE, Relation.LE],
        [3.7, 2.2],
    )
    instance = MipInstance(base=program, integer_mask=(True, False))
    solution = solve_mip(instance)
    best = None
    for k in range(0, 3):
        fixed = make_program(
            [-1.0],
            [[1.0]],
            [Relation.LE],
            [3.7 - k],
        )
        lp = solve_lp(fixed)
        value = -2.0 * k + lp.objective_value
        if best is None or value < best:
            best = value
    assert solution.objective_value == pytest.approx(best, abs=1e-8)


def test_relaxation_bound_and_mask_removal():
    rng = random.Random(11)
    for _ in range(40):
        instance = random_instance(rng)
        relaxed = solve_lp(instance.base)
        solution = solve_mip(instance)
        if solution.status is LpStatus.OPTIMAL:
            assert relaxed.status is LpStatus.OPTIMAL
            assert solution.objective_value >= relaxed.objective_value - 1e-7
            unmasked = solve_mip(MipInstance(base=instance.base, integer_mask=(False,) * instance.base.n_variables))
            assert unmasked.objective_value <= solution.objective_value + 1e-9


def test_determinism_identical_values_vectors():
    rng = random.Random(600)
    for _ in range(15):
        instance = random_instance(rng)
        first = solve_mip(instance)
        second = solve_mip(instance)
        assert first.status is second.status
        assert first.nodes_explored == second.nodes_explored
        if first.status is LpStatus.OPTIMAL:
            assert np.array_equal(first.values, second.values)


def test_node_limit_returns_incumbent_with_flag():
    # A knapsack-ish instance that needs a few nodes; with a tight limit the
    # solver must surface the best incumbent and set the flag, or raise when
    # it has none.
    rng = random.Random(8)
    raised = 0
    flagged = 0
    for _ in range(40):
        instance = random_instance(rng)
        full = solve_mip(instance)
        if full.status is not LpStatus.OPTIMAL or full.nodes_explored < 4:
            continue
        try:
            limited = solve_mip(instance, node_limit=3)
            if limited.status is LpStatus.OPTIMAL and limited.hit_node_limit:
                flagged += 1
                assert limited.objective_value >= full.objective_value - 1e-9
        except IterationLimitError:
            raised += 1
    assert flagged + raised >= 1


def test_unbounded_relaxation_rejected():
    program = make_program([-1.0], np.zeros((0, 1)), [], [])
    with pytest.raises(ValueError):
        solve_mip(MipInstance(base=program, integer_mask=(True,)))


def test_solution_type_shape():
    program = make_program([-1.0], [[1.0]], [Relation.LE], [1.5])
    solution = solve_mip(MipInstance(base=program, integer_mask=(True,)))
    assert isinstance(solution, MipSolution)
    assert solution.hit_node_limit is False
