"""Dense two-phase primal simplex over a standard-form tableau.

The solver is deterministic: identical programs produce identical pivot
sequences and therefore identical solutions. Pivoting uses the largest
reduced-cost rule and falls back to Bland's rule once a run of degenerate
pivots is detected, which guarantees termination; after a strictly
improving pivot the fast rule resumes (no basis can repeat once the
objective has strictly decreased).

Tolerances are fixed module constants, not knobs: a solution is accepted as
feasible when every constraint residual is within FEASIBILITY_TOL, and a
column is an improving direction only when its reduced cost is below
-REDUCED_COST_TOL.

The pivot loop is compiled with numba; at the few-hundred-variable scale of
the planning models a tableau iteration is memory-bound and the compiled
loop keeps branch-and-bound node solves in the millisecond range.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from numba import njit

FEASIBILITY_TOL = 1e-7
REDUCED_COST_TOL = 1e-9

_PIVOT_TOL = 1e-10
_DEGENERATE_PIVOT_LIMIT = 64
_MAX_PIVOTS = 2_000_000


class Relation(str, Enum):
    LE = "<="
    EQ = "=="
    GE = ">="


class LpStatus(str, Enum):
    OPTIMAL = "OPTIMAL"
    INFEASIBLE = "INFEASIBLE"
    UNBOUNDED = "UNBOUNDED"


class DimensionMismatch(ValueError):
    """Program arrays disagree on the number of variables or rows."""


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """Minimization program: objective @ x subject to rows, relations, bounds.

    Lower bounds are non-negative (0 by default); upper bounds may be
    infinite. All arrays are normalized to numpy on construction.
    """

    objective: np.ndarray
    rows: np.ndarray
    relations: tuple[Relation, ...]
    rhs: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    names: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "objective", np.asarray(self.objective, dtype=float))
        rows = np.asarray(self.rows, dtype=float)
        if rows.size == 0:
            rows = rows.reshape(0, self.objective.shape[0])
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "rhs", np.asarray(self.rhs, dtype=float))
        object.__setattr__(self, "lower", np.asarray(self.lower, dtype=float))
        object.__setattr__(self, "upper", np.asarray(self.upper, dtype=float))
        object.__setattr__(self, "relations", tuple(self.relations))
        object.__setattr__(self, "names", tuple(self.names))

        n = self.n_variables
        if self.rows.ndim != 2 or self.rows.shape[1] != n:
            raise DimensionMismatch(
                f"constraint rows have width {self.rows.shape[1:]} but the objective has {n} entries"
            )
        if len(self.relations) != self.rows.shape[0] or self.rhs.shape[0] != self.rows.shape[0]:
            raise DimensionMismatch("relations/rhs length must match the number of rows")
        if self.lower.shape[0] != n or self.upper.shape[0] != n:
            raise DimensionMismatch("bound vectors must match the number of variables")
        if len(self.names) != n:
            raise DimensionMismatch("names must match the number of variables")
        if np.any(self.lower < 0):
            raise ValueError("lower bounds must be non-negative")
        if np.any(self.lower > self.upper):
            raise ValueError("every lower bound must not exceed its upper bound")

    @property
    def n_variables(self) -> int:
        return int(self.objective.shape[0])

    @property
    def n_rows(self) -> int:
        return int(self.rows.shape[0])


def make_program(
    objective,
    rows,
    relations,
    rhs,
    lower=None,
    upper=None,
    names: tuple[str, ...] | None = None,
) -> LinearProgram:
    """Convenience constructor filling default bounds [0, inf) and names."""
    objective = np.asarray(objective, dtype=float)
    n = objective.shape[0]
    if lower is None:
        lower = np.zeros(n)
    if upper is None:
        upper = np.full(n, np.inf)
    if names is None:
        names = tuple(f"x{i}" for i in range(n))
    rows = np.asarray(rows, dtype=float)
    if rows.size == 0:
        rows = rows.reshape(0, n)
    return LinearProgram(
        objective=objective,
        rows=np.atleast_2d(rows),
        relations=tuple(relations),
        rhs=np.asarray(rhs, dtype=float),
        lower=np.asarray(lower, dtype=float),
        upper=np.asarray(upper, dtype=float),
        names=tuple(names),
    )


@dataclass(frozen=True, eq=False)
class LpSolution:
    status: LpStatus
    values: np.ndarray
    objective_value: float


@njit(cache=True)
def _simplex_loop(T, basis, allowed, ban_on_leave, degen_limit, max_pivots):  # pragma: no cover
    """In-place pivot loop. Returns 0 (optimal), 1 (unbounded) or 2 (cap hit)."""
    m = T.shape[0] - 1
    ncols = T.shape[1] - 1
    bland = False
    degen = 0
    pivots = 0
    while pivots < max_pivots:
        col = -1
        if bland:
            for j in range(ncols):
                if allowed[j] and T[m, j] < -REDUCED_COST_TOL:
                    col = j
                    break
        else:
            best_cost = -REDUCED_COST_TOL
            for j in range(ncols):
                if allowed[j] and T[m, j] < best_cost:
                    best_cost = T[m, j]
                    col = j
        if col < 0:
            return 0

        row = -1
        best_ratio = np.inf
        for i in range(m):
            a = T[i, col]
            if a > _PIVOT_TOL:
                b = T[i, ncols]
                if b < 0.0:
                    b = 0.0
                r = b / a
                if r < best_ratio - 1e-12:
                    best_ratio = r
                    row = i
                elif bland and row >= 0 and r <= best_ratio + 1e-12 and basis[i] < basis[row]:
                    row = i
        if row < 0:
            return 1

        if best_ratio <= 1e-12:
            degen += 1
            if degen > degen_limit:
                bland = True
        else:
            degen = 0
            bland = False

        piv = T[row, col]
        for j in range(ncols + 1):
            T[row, j] /= piv
        for i in range(m + 1):
            if i == row:
                continue
            f = T[i, col]
            if f != 0.0:
                for j in range(ncols + 1):
                    T[i, j] -= f * T[row, j]
        for i in range(m + 1):
            T[i, col] = 0.0
        T[row, col] = 1.0
        leaving = basis[row]
        basis[row] = col
        if ban_on_leave[leaving]:
            allowed[leaving] = False
        pivots += 1
    return 2


def _run_simplex(T, basis, allowed, ban_on_leave) -> str:
    code = _simplex_loop(T, basis, allowed, ban_on_leave, _DEGENERATE_PIVOT_LIMIT, _MAX_PIVOTS)
    if code == 0:
        return "optimal"
    if code == 1:
        return "unbounded"
    raise ArithmeticError("simplex exceeded the pivot safety cap")


def solve_lp(program: LinearProgram) -> LpSolution:
    """Solve a linear program; status is certified by phase-1/ray detection."""
    n = program.n_variables
    c = program.objective

    # Shift lower bounds to zero; reintroduced on extraction.
    shift = program.lower
    span = program.upper - shift

    row_list: list[np.ndarray] = []
    rel_list: list[Relation] = []
    rhs_list: list[float] = []
    for i in range(program.n_rows):
        coeffs = program.rows[i]
        rhs = float(program.rhs[i] - coeffs @ shift)
        if not coeffs.any():
            # Presolve: empty rows are dropped, or certify infeasibility.
            ok = {
                Relation.LE: rhs >= -FEASIBILITY_TOL,
                Relation.GE: rhs <= FEASIBILITY_TOL,
                Relation.EQ: abs(rhs) <= FEASIBILITY_TOL,
            }[program.relations[i]]
            if not ok:
                return LpSolution(LpStatus.INFEASIBLE, np.full(n, np.nan), float("nan"))
            continue
        row_list.append(coeffs)
        rel_list.append(program.relations[i])
        rhs_list.append(rhs)
    for j in np.flatnonzero(np.isfinite(span)):
        coeffs = np.zeros(n)
        coeffs[j] = 1.0
        row_list.append(coeffs)
        rel_list.append(Relation.LE)
        rhs_list.append(float(span[j]))

    m = len(row_list)
    n_slack = sum(1 for r in rel_list if r is not Relation.EQ)
    width = n + n_slack

    A = np.zeros((m, width))
    b = np.zeros(m)
    slack_at = n
    slack_col = np.full(m, -1, dtype=np.int64)
    for i in range(m):
        A[i, :n] = row_list[i]
        b[i] = rhs_list[i]
        if rel_list[i] is not Relation.EQ:
            A[i, slack_at] = 1.0 if rel_list[i] is Relation.LE else -1.0
            slack_col[i] = slack_at
            slack_at += 1
        if b[i] < 0:
            A[i] *= -1.0
            b[i] *= -1.0

    basis = np.full(m, -1, dtype=np.int64)
    needs_artificial: list[int] = []
    for i in range(m):
        j = slack_col[i]
        if j >= 0 and A[i, j] == 1.0:
            basis[i] = j
        else:
            needs_artificial.append(i)

    art_start = width
    total = width + len(needs_artificial)
    T = np.zeros((m + 1, total + 1))
    T[:m, :width] = A
    T[:m, -1] = b
    for k, i in enumerate(needs_artificial):
        T[i, art_start + k] = 1.0
        basis[i] = art_start + k

    allowed = np.ones(total, dtype=np.bool_)
    ban_on_leave = np.zeros(total, dtype=np.bool_)

    if needs_artificial:
        ban_on_leave[art_start:] = True
        T[-1, art_start:total] = 1.0
        for i in needs_artificial:
            T[-1] -= T[i]
        outcome = _run_simplex(T, basis, allowed, ban_on_leave)
        if outcome != "optimal":
            raise ArithmeticError("phase-1 objective cannot be unbounded")
        if -T[-1, -1] > FEASIBILITY_TOL:
            return LpSolution(LpStatus.INFEASIBLE, np.full(n, np.nan), float("nan"))
        # Drive leftover artificials out of the basis; a row that offers no
        # pivot is redundant and is dropped.
        keep = np.ones(T.shape[0] - 1, dtype=bool)
        for i in range(T.shape[0] - 1):
            if basis[i] < art_start:
                continue
            pivots = np.flatnonzero(np.abs(T[i, :art_start]) > _PIVOT_TOL)
            if pivots.size:
                _pivot_once(T, i, int(pivots[0]))
                basis[i] = int(pivots[0])
            else:
                keep[i] = False
        if not keep.all():
            T = np.vstack([T[:-1][keep], T[-1:]])
            basis = basis[keep]
        allowed[art_start:] = False

    # Phase 2: restore the true objective and price out the basis.
    T[-1, :] = 0.0
    T[-1, :n] = c
    for i in range(T.shape[0] - 1):
        if T[-1, basis[i]] != 0.0:
            T[-1] -= T[-1, basis[i]] * T[i]

    outcome = _run_simplex(T, basis, allowed, ban_on_leave)
    if outcome == "unbounded":
        return LpSolution(LpStatus.UNBOUNDED, np.full(n, np.nan), float("nan"))

    x = np.zeros(total)
    for i in range(T.shape[0] - 1):
        x[basis[i]] = T[i, -1]
    values = x[:n] + shift
    return LpSolution(LpStatus.OPTIMAL, values, float(c @ values))


def _pivot_once(T: np.ndarray, row: int, col: int) -> None:
    piv = T[row] / T[row, col]
    T[row] = piv
    factor = T[:, col].copy()
    factor[row] = 0.0
    T -= np.outer(factor, piv)
    T[:, col] = 0.0
    T[row, col] = 1.0


def residuals(program: LinearProgram, values: np.ndarray) -> np.ndarray:
    """Per-row constraint violations of a candidate point (0 when satisfied)."""
    out = np.zeros(program.n_rows)
    lhs = program.rows @ values
    for i, rel in enumerate(program.relations):
        if rel is Relation.LE:
            out[i] = max(0.0, lhs[i] - program.rhs[i])
        elif rel is Relation.GE:
            out[i] = max(0.0, program.rhs[i] - lhs[i])
        else:
            out[i] = abs(lhs[i] - program.rhs[i])
    return out


def format_program(program: LinearProgram) -> str:
    """Human-readable equation listing, used behind debug flags."""

    def term(coeff: float, name: str) -> str:
        return f"{coeff:+g}*{name}"

    lines = [
        "min " + " ".join(term(c, nm) for c, nm in zip(program.objective, program.names) if c != 0.0)
    ]
    for i in range(program.n_rows):
        body = " ".join(
            term(v, nm) for v, nm in zip(program.rows[i], program.names) if v != 0.0
        )
        lines.append(f"  {body or '0'} {program.relations[i].value} {program.rhs[i]:g}")
    for j, nm in enumerate(program.names):
        lo, hi = program.lower[j], program.upper[j]
        bound = f"{lo:g} <= {nm}" + ("" if np.isinf(hi) else f" <= {hi:g}")
        lines.append(f"  {bound}")
    return "\n".join(lines)
