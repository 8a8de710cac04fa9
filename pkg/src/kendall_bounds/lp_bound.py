"""The linear program over the two-sided class-sum algebra that upper-bounds
optimal code sizes, plus reconstruction and verification of the positive
semidefinite certificate it implies.

Variables live in R^(2d): a block of coefficients for the conjugacy-class
sums and a block for their w0-translates.  Rows come in two families:
non-positivity rows, one per symmetrized theta class whose maximal distance
reaches dmin, and spectral rows, one per isotypic block whose symmetric
(respectively antisymmetric) w0-half is nonzero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .characters import SpectralData, spectral_data
from .classes import (
    SubgroupKind,
    class_decomposition,
    element_class_labels,
    product_rank_table,
    symmetrize,
    t_coefficients,
)
from .errors import ResourceCapError, SolverDiagnosticError
from .metrics import hamming_bound, singleton_bound
from .perms import longest_element
from .simplex import GE, LE, LinearProgram, LpStatus, solve_lp

FLOOR_GUARD = 1e-6
LP_CAP = 10
LP_HARD_CAP = 11
VERIFY_CAP = 6


def floor_with_guard(value: float) -> int:
    """Integer floor with a small guard absorbing solver round-off."""
    return math.floor(value + FLOOR_GUARD)


@dataclass(frozen=True)
class Theorem4Instance:
    n: int
    dmin: int
    d: int
    t_rows: tuple[tuple[int, int], ...]   # per theta-sym class: (i_plain, i_shifted)
    gammas: tuple[int, ...]               # per theta-sym class
    spectral: SpectralData

    @property
    def objective_support(self) -> tuple[int, int]:
        """0-based variable indices carrying the objective."""
        i_plain, i_shifted = self.t_rows[0]
        return i_plain - 1, self.d + i_shifted - 1

    def active_rows(self) -> list[tuple[int, int]]:
        """Distinct non-positivity rows for this dmin (duplicates collapsed:
        theta classes sharing the same class pair yield the same row)."""
        seen = set()
        out = []
        for ell in range(1, len(self.t_rows)):
            if self.gammas[ell] >= self.dmin:
                pair = self.t_rows[ell]
                if pair not in seen:
                    seen.add(pair)
                    out.append(pair)
        return out


@dataclass
class BoundReport:
    """Per (n, dmin) record of whichever bounds were computed."""

    n: int
    dmin: int
    lp_raw: float | None = None
    lp_bound: int | None = None
    sb: int | None = None
    hb: int | None = None
    sdp_raw: float | None = None
    sdp_value: int | None = None
    search_value: int | None = None
    search_exact: bool | None = None

    def methods_run(self) -> tuple[str, ...]:
        out = []
        for name, val in (("lp", self.lp_bound), ("sb", self.sb), ("hb", self.hb),
                          ("sdp", self.sdp_value), ("search", self.search_value)):
            if val is not None:
                out.append(name)
        return tuple(out)


def build_instance(n, dmin, *, allow_large=False, cache=None) -> Theorem4Instance:
    top = n * (n - 1) // 2
    if not 1 <= dmin <= top:
        raise ValueError(f"dmin={dmin} out of range 1..{top} for n={n}")
    cap = LP_HARD_CAP if allow_large else LP_CAP
    if n > cap:
        raise ResourceCapError(f"bound LP capped at n={cap}")
    tcoef = t_coefficients(n, allow_large=allow_large, cache=cache)
    theta = class_decomposition(n, SubgroupKind.THETA, allow_large=allow_large, cache=cache)
    gammas = tuple(s.gamma for s in symmetrize(theta))
    spec = spectral_data(n, cache=cache)
    inst = Theorem4Instance(n=n, dmin=dmin, d=tcoef.d, t_rows=tcoef.rows,
                            gammas=gammas, spectral=spec)
    # the identity's theta class is {e}, so the objective support is the
    # identity class and the shifted class of w0
    full = class_decomposition(n, SubgroupKind.FULL)
    w0_class = full.class_of(longest_element(n))
    assert inst.t_rows[0] == (1, w0_class)
    return inst


def instance_lp(inst: Theorem4Instance) -> LinearProgram:
    d = inst.d
    nvars = 2 * d
    objective = np.zeros(nvars)
    for idx in inst.objective_support:
        objective[idx] += 1.0

    lp = LinearProgram(objective=objective)
    for i_plain, i_shifted in inst.active_rows():
        row = np.zeros(nvars)
        row[i_plain - 1] += 1.0
        row[d + i_shifted - 1] += 1.0
        lp.add_row(row, LE, 0.0)

    p = inst.spectral.p
    c = inst.spectral.c
    for j in range(d):
        if inst.spectral.m1_nonzero[j]:
            row = np.zeros(nvars)
            for i in range(d):
                row[i] += p[i][j]
                row[d + i] += p[i][j]
            lp.add_row(row, GE, c[j])
        if inst.spectral.m2_nonzero[j]:
            row = np.zeros(nvars)
            for i in range(d):
                row[i] += p[i][j]
                row[d + i] -= p[i][j]
            lp.add_row(row, GE, c[j])
    return lp


def solve_instance(inst: Theorem4Instance):
    solution = solve_lp(instance_lp(inst))
    if solution.status is not LpStatus.OPTIMAL:
        raise SolverDiagnosticError(
            f"bound LP at n={inst.n}, dmin={inst.dmin} finished {solution.status.value}; "
            "this should not happen and the instance is attached for inspection",
            payload={"n": inst.n, "dmin": inst.dmin, "status": solution.status.value,
                     "t_rows": inst.t_rows, "gammas": inst.gammas})
    return solution


def lp_bound(n, dmin, *, allow_large=False, cache=None) -> BoundReport:
    """Solve the bound LP and fill a report (comparison bounds included,
    since they are closed forms)."""
    inst = build_instance(n, dmin, allow_large=allow_large, cache=cache)
    solution = solve_instance(inst)
    raw = solution.objective_value
    report = BoundReport(n=n, dmin=dmin, lp_raw=raw, lp_bound=floor_with_guard(raw),
                         sb=singleton_bound(n, dmin), hb=hamming_bound(n, dmin))
    assert report.lp_bound >= 1
    return report


def reconstruct_dual(inst: Theorem4Instance, a_star: np.ndarray) -> np.ndarray:
    """Per-theta-sym-class values z_l = sum_i t_{l,i} a_i; z_1 equals the LP
    objective, and spreading z over the contained length-CC classes gives a
    dual-feasible vector for the semidefinite program."""
    d = inst.d
    z = np.empty(len(inst.t_rows))
    for ell, (i_plain, i_shifted) in enumerate(inst.t_rows):
        z[ell] = a_star[i_plain - 1] + a_star[d + i_shifted - 1]
    return z


def spread_to_length_classes(inst: Theorem4Instance, z: np.ndarray, *, cache=None):
    """Expand theta-class values to a vector over length-CC symmetrized
    classes (b_j = z of the theta class containing length class j).

    Returns (b, psi_syms).  Needs element labels, so it is practical at the
    verification scale only.
    """
    psi = class_decomposition(inst.n, SubgroupKind.PSI, cache=cache)
    theta = class_decomposition(inst.n, SubgroupKind.THETA, cache=cache)
    theta_syms = symmetrize(theta)
    sym_of_class = np.empty(theta.num_classes + 1, dtype=np.int64)
    for s in theta_syms:
        for cid in s.member_class_ids:
            sym_of_class[cid] = s.id
    psi_syms = symmetrize(psi)
    b = np.empty(len(psi_syms))
    for j, s in enumerate(psi_syms):
        b[j] = z[sym_of_class[theta.class_of(s.representative)] - 1]
    return b, psi_syms


def verify_dual_feasible(n, dmin, b: np.ndarray, *, cache=None) -> float:
    """Minimum eigenvalue of sum_j b_j Atilde_j - J over the length-CC
    symmetrized matrices; values >= -1e-6 * n! certify feasibility."""
    if n > VERIFY_CAP:
        raise ResourceCapError(f"explicit dual verification capped at n={VERIFY_CAP}")
    from .sdp import symmetric_eigen

    psi = class_decomposition(n, SubgroupKind.PSI, cache=cache)
    psi_syms = symmetrize(psi)
    if len(b) != len(psi_syms):
        raise ValueError(f"expected {len(psi_syms)} coefficients, got {len(b)}")
    sym_of_class = np.empty(psi.num_classes + 1, dtype=np.int64)
    for s in psi_syms:
        for cid in s.member_class_ids:
            sym_of_class[cid] = s.id
    labels = element_class_labels(psi)
    value_by_rank = np.asarray(b, dtype=float)[sym_of_class[labels + 1] - 1]
    matrix = value_by_rank[product_rank_table(n)] - 1.0
    eigenvalues, _ = symmetric_eigen(matrix)
    return float(eigenvalues[0])
