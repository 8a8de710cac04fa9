"""Deterministic dense LP solver: two-phase simplex.

All variables are free by default (split into positive and negative parts
internally); finite box bounds become ordinary rows.  Every row is scaled by
its max-abs coefficient before solving, which matters here because bound-LP
rows mix unit entries with conjugacy-class sizes up to ~10^7.

Pricing is Dantzig's rule (most negative reduced cost, lowest index on
ties); a run of degenerate pivots switches to Bland's rule until the
objective moves again, which is what guarantees termination.  The tableau is
periodically rebuilt from the pristine constraint data and the current
basis, so long degenerate stretches cannot accumulate round-off.  Pivot
choices depend only on the input, making the whole solve reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

LE = "<="
GE = ">="

_RC_TOL = 1e-9        # reduced-cost threshold (scaled units)
_PIVOT_TOL = 1e-9     # smallest acceptable pivot element
_FEAS_TOL = 1e-7      # phase-1 residual regarded as infeasibility
_DEGEN_TOL = 1e-12    # ratio below this counts as a degenerate pivot
_BLAND_AFTER = 40     # consecutive degenerate pivots before Bland engages
_REFRESH_EVERY = 400  # pivots between tableau rebuilds


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    ITERATION_LIMIT = "iteration_limit"


@dataclass
class LinearProgram:
    """Minimize objective . x subject to rows of (coeffs, relation, rhs).

    ``lower``/``upper`` are optional per-variable box bounds (None entries
    mean unbounded on that side).
    """

    objective: np.ndarray
    rows: list[tuple[np.ndarray, str, float]] = field(default_factory=list)
    lower: list[float | None] | None = None
    upper: list[float | None] | None = None

    def add_row(self, coeffs, rel, rhs) -> None:
        if rel not in (LE, GE):
            raise ValueError(f"relation must be {LE!r} or {GE!r}, got {rel!r}")
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != np.shape(self.objective):
            raise ValueError("constraint width does not match variable count")
        self.rows.append((coeffs, rel, float(rhs)))


@dataclass
class LpSolution:
    status: LpStatus
    values: np.ndarray | None
    objective_value: float | None
    max_violation: float
    pivots: int


def _assemble(lp: LinearProgram) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    nvars = len(lp.objective)
    coeff_rows, rels, rhs = [], [], []
    for coeffs, rel, b in lp.rows:
        coeff_rows.append(np.asarray(coeffs, dtype=float))
        rels.append(rel)
        rhs.append(b)
    for bounds, rel in ((lp.lower, GE), (lp.upper, LE)):
        if bounds is not None:
            for i, val in enumerate(bounds):
                if val is not None and np.isfinite(val):
                    e = np.zeros(nvars)
                    e[i] = 1.0
                    coeff_rows.append(e)
                    rels.append(rel)
                    rhs.append(float(val))
    if not coeff_rows:
        raise ValueError("LP has no constraints")
    return np.array(coeff_rows), np.array(rels), np.array(rhs, dtype=float)


class _Simplex:
    def __init__(self, matrix: np.ndarray, cost2: np.ndarray, art_start: int,
                 basis: list[int], max_pivots: int):
        # matrix: pristine canonical rows [structurals+slacks+artificials | rhs]
        self.pristine = matrix
        self.cost2 = cost2          # phase-2 cost over all columns (zeros on slacks/arts)
        self.art_start = art_start
        self.basis = basis
        self.max_pivots = max_pivots
        self.pivots = 0
        self.tableau = matrix.copy()
        self.rhs_col = matrix.shape[1] - 1
        self.cost1 = np.zeros(matrix.shape[1] - 1)
        self.cost1[art_start:] = 1.0
        self.bottom = np.zeros(matrix.shape[1])
        self._bland = False
        self._degen_run = 0

    def _rebuild(self, cost: np.ndarray) -> None:
        """Re-derive the canonical tableau for the current basis from the
        pristine data, purging accumulated round-off."""
        base = self.pristine[:, self.basis]
        try:
            self.tableau = np.linalg.solve(base, self.pristine)
        except np.linalg.LinAlgError:
            pass  # keep the incrementally updated rows
        self._set_cost(cost)

    def _set_cost(self, cost: np.ndarray) -> None:
        bottom = np.concatenate([cost, [0.0]]).astype(float)
        bottom -= cost[self.basis] @ self.tableau
        self.bottom = bottom

    def _entering(self) -> int:
        costs = self.bottom[: self.art_start]
        if self._bland:
            hits = np.flatnonzero(costs < -_RC_TOL)
            return int(hits[0]) if hits.size else -1
        j = int(np.argmin(costs))
        return j if costs[j] < -_RC_TOL else -1

    def _leaving(self, col: int) -> int:
        column = self.tableau[:, col]
        rhs = self.tableau[:, self.rhs_col]
        best = -1
        best_key = None
        for i in range(len(column)):
            a = column[i]
            if a > _PIVOT_TOL:
                ratio = (rhs[i] if rhs[i] > 0.0 else 0.0) / a
                key = (ratio, self.basis[i])
                if best_key is None or key < best_key:
                    best, best_key = i, key
        return best

    def _pivot(self, row: int, col: int) -> None:
        t = self.tableau
        t[row] /= t[row, col]
        factors = t[:, col].copy()
        factors[row] = 0.0
        t -= np.outer(factors, t[row])
        self.bottom -= self.bottom[col] * t[row]
        self.basis[row] = col
        self.pivots += 1

    def run_phase(self, cost: np.ndarray) -> LpStatus:
        self._rebuild(cost)
        self._bland = False
        self._degen_run = 0
        since_refresh = 0
        while True:
            j = self._entering()
            if j < 0:
                return LpStatus.OPTIMAL
            i = self._leaving(j)
            if i < 0:
                return LpStatus.UNBOUNDED
            if self.pivots >= self.max_pivots:
                return LpStatus.ITERATION_LIMIT
            ratio = self.tableau[i, self.rhs_col] / self.tableau[i, j]
            self._pivot(i, j)
            since_refresh += 1
            if ratio > _DEGEN_TOL:
                self._degen_run = 0
                self._bland = False
            else:
                self._degen_run += 1
                if self._degen_run >= _BLAND_AFTER:
                    self._bland = True
            if since_refresh >= _REFRESH_EVERY:
                self._rebuild(cost)
                since_refresh = 0

    def phase1_residual(self) -> float:
        return float(self.cost1[self.basis] @ self.tableau[:, self.rhs_col])


def solve_lp(lp: LinearProgram, *, max_pivots: int = 1_000_000) -> LpSolution:
    """Solve the program; statuses are returned, never raised."""
    objective = np.asarray(lp.objective, dtype=float)
    if not np.all(np.isfinite(objective)):
        raise ValueError("objective has non-finite entries")
    nvars = len(objective)
    A, rels, b = _assemble(lp)
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
        raise ValueError("constraints have non-finite entries")

    # row scaling by max-abs coefficient
    scale = np.abs(A).max(axis=1)
    scale[scale == 0.0] = 1.0
    A = A / scale[:, None]
    b = b / scale

    # free variables split as x = xp - xm; nonnegative rhs; slack/surplus
    m = len(A)
    flip = b < 0
    A = np.where(flip[:, None], -A, A)
    b = np.where(flip, -b, b)
    rels = np.where(flip, np.where(rels == LE, GE, LE), rels)

    ncols = 2 * nvars
    art_start = ncols + m
    total = art_start + m
    matrix = np.zeros((m, total + 1))
    matrix[:, :nvars] = A
    matrix[:, nvars:ncols] = -A
    matrix[:, -1] = b
    basis: list[int] = []
    for i in range(m):
        if rels[i] == LE:
            matrix[i, ncols + i] = 1.0
            basis.append(ncols + i)
        else:
            matrix[i, ncols + i] = -1.0
            matrix[i, art_start + i] = 1.0
            basis.append(art_start + i)

    cost2 = np.zeros(total)
    cost2[:nvars] = objective
    cost2[nvars:ncols] = -objective

    solver = _Simplex(matrix, cost2, art_start, basis, max_pivots)

    status = solver.run_phase(solver.cost1)
    if status is LpStatus.ITERATION_LIMIT:
        return LpSolution(status, None, None, np.inf, solver.pivots)
    # phase 1 minimizes the artificial sum, which cannot be unbounded; a
    # numerically honest residual decides feasibility either way
    residual = solver.phase1_residual()
    if residual > _FEAS_TOL:
        return LpSolution(LpStatus.INFEASIBLE, None, None, np.inf, solver.pivots)

    # pivot zero-level artificials out of the basis where possible; leftover
    # ones sit on redundant rows and are never allowed to re-enter
    for i in range(m):
        if solver.basis[i] >= art_start:
            row = solver.tableau[i]
            for j in range(art_start):
                if abs(row[j]) > _PIVOT_TOL:
                    solver._pivot(i, j)
                    break

    status = solver.run_phase(cost2)
    if status is not LpStatus.OPTIMAL:
        return LpSolution(status, None, None, np.inf, solver.pivots)

    values_split = np.zeros(total)
    for i, var in enumerate(solver.basis):
        values_split[var] = solver.tableau[i, solver.rhs_col]
    values = values_split[:nvars] - values_split[nvars:ncols]
    objective_value = float(objective @ values)

    violation = 0.0
    for coeffs, rel, rhs_val in lp.rows:
        gap = float(coeffs @ values) - rhs_val
        violation = max(violation, gap if rel == LE else -gap, 0.0)
    for bounds, sign in ((lp.lower, 1.0), (lp.upper, -1.0)):
        if bounds is not None:
            for i, val in enumerate(bounds):
                if val is not None:
                    violation = max(violation, sign * (val - values[i]))

    return LpSolution(LpStatus.OPTIMAL, values, objective_value, float(violation), solver.pivots)
