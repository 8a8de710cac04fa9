"""Dual semidefinite bound at tiny degrees, solved by LP cutting planes.

The dual program minimizes b_1 over coefficient vectors b for the
symmetrized length-CC matrices, subject to sign constraints on classes at
distance >= dmin and positive semidefiniteness of sum_j b_j Atilde_j - J.
Each round solves a master LP over the accumulated linear cuts, then asks an
eigensolver for the most negative eigenpairs of the current matrix; their
eigenvectors v yield new valid cuts  sum_j b_j (v' Atilde_j v) >= (v' 1)^2.

On termination the first coordinate is bumped by |lambda_min| (the identity
matrix is Atilde_1 and b_1 carries no sign constraint), which turns the
near-feasible master iterate into an exactly feasible point, so the returned
value is a genuine upper bound rather than a relaxation value.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classes import SubgroupKind, class_decomposition, symmetrize, symmetrized_matrices
from .errors import ResourceCapError, SolverDiagnosticError
from .metrics import kendall_distance
from .perms import Perm, rank
from .simplex import GE, LinearProgram, LpStatus, solve_lp

SDP_CAP = 5
DEFAULT_TOL = 1e-7
MAX_ROUNDS = 500
MAX_CUTS_PER_ROUND = 8


def symmetric_eigen(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric
    matrix of order <= 720.  Backed by LAPACK's symmetric solver, which is
    deterministic for a fixed input; a characteristic-polynomial oracle in
    the tests keeps it honest."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("matrix must be square")
    if matrix.shape[0] > 720:
        raise ResourceCapError("symmetric_eigen capped at order 720")
    scale = np.abs(matrix).max()
    if not np.allclose(matrix, matrix.T, atol=1e-10 * max(scale, 1.0)):
        raise ValueError("matrix is not symmetric")
    return np.linalg.eigh(matrix)


@dataclass(frozen=True)
class DualSdpInstance:
    """Explicit data of the dual program at one (n, dmin)."""

    n: int
    dmin: int
    deltas: tuple[int, ...]               # distance label per symmetrized class
    sizes: tuple[int, ...]                # members per symmetrized class
    matrices: np.ndarray                  # (dtil, n!, n!) symmetrized 0-1 stack

    @property
    def dtil(self) -> int:
        return len(self.deltas)

    def sign_constrained(self) -> list[bool]:
        return [j > 0 and self.deltas[j] >= self.dmin for j in range(self.dtil)]


def dual_sdp_instance(n, dmin) -> DualSdpInstance:
    if n > SDP_CAP:
        raise ResourceCapError(f"dual SDP capped at n={SDP_CAP}")
    top = n * (n - 1) // 2
    if not 1 <= dmin <= top:
        raise ValueError(f"dmin={dmin} out of range 1..{top} for n={n}")
    psi = class_decomposition(n, SubgroupKind.PSI)
    syms = symmetrize(psi)
    stack = np.stack(symmetrized_matrices(n, SubgroupKind.PSI, decomp=psi))
    return DualSdpInstance(
        n=n, dmin=dmin,
        deltas=tuple(s.delta for s in syms),
        sizes=tuple(s.size for s in syms),
        matrices=stack,
    )


@dataclass
class DualSdpResult:
    value: float
    b: np.ndarray
    rounds: int
    min_eigenvalue: float
    cuts: int


def solve_dual_sdp(n, dmin, tol: float = DEFAULT_TOL, *,
                   max_rounds: int = MAX_ROUNDS) -> DualSdpResult:
    """Cutting-plane solve of the dual program; see the module docstring."""
    inst = dual_sdp_instance(n, dmin)
    dtil = inst.dtil
    group_order = inst.matrices.shape[1]
    box = 10.0 * group_order
    threshold = tol * group_order

    lower = [-box] * dtil
    upper = [0.0 if constrained else box for constrained in inst.sign_constrained()]
    upper[0] = box

    objective = np.zeros(dtil)
    objective[0] = 1.0
    lp = LinearProgram(objective=objective, lower=lower, upper=upper)

    # seed cuts: every coordinate vector gives the same row (off-diagonal
    # classes have zero diagonal), namely b_1 >= 1; the normalized all-ones
    # vector gives sum_j size_j b_j >= n!
    e1 = np.zeros(dtil)
    e1[0] = 1.0
    lp.add_row(e1, GE, 1.0)
    lp.add_row(np.array(inst.sizes, dtype=float), GE, float(group_order))

    last = None
    for rounds in range(1, max_rounds + 1):
        solution = solve_lp(lp)
        if solution.status is not LpStatus.OPTIMAL:
            raise SolverDiagnosticError(
                f"dual SDP master at n={n}, dmin={dmin} finished {solution.status.value}",
                payload={"n": n, "dmin": dmin, "round": rounds})
        b = solution.values
        s_matrix = np.tensordot(b, inst.matrices, axes=1)
        s_matrix -= 1.0
        eigenvalues, vectors = symmetric_eigen(s_matrix)
        lam_min = float(eigenvalues[0])
        last = (b, lam_min, rounds)
        if lam_min >= -threshold:
            corrected = b.copy()
            corrected[0] += max(0.0, -lam_min)
            return DualSdpResult(
                value=float(corrected[0]),
                b=corrected, rounds=rounds, min_eigenvalue=lam_min,
                cuts=len(lp.rows))
        for k in range(min(MAX_CUTS_PER_ROUND, len(eigenvalues))):
            if eigenvalues[k] >= -threshold:
                break
            v = vectors[:, k]
            coeffs = np.einsum("i,jik,k->j", v, inst.matrices, v)
            rhs = float(v.sum()) ** 2
            lp.add_row(coeffs, GE, rhs)

    raise SolverDiagnosticError(
        f"dual SDP at n={n}, dmin={dmin} did not converge in {max_rounds} rounds",
        payload={"n": n, "dmin": dmin, "last_b": None if last is None else last[0].tolist(),
                 "last_min_eigenvalue": None if last is None else last[1]})


@dataclass(frozen=True)
class PrimalCandidate:
    """Candidate matrix for the primal program: either invariant-form
    coefficients over the symmetrized classes, or an explicit code whose
    normalized indicator outer product realizes its size as the objective."""

    coeffs: tuple[float, ...] | None = None
    code: tuple[Perm, ...] | None = None

    def __post_init__(self):
        if (self.coeffs is None) == (self.code is None):
            raise ValueError("exactly one of coeffs or code must be given")


@dataclass
class PrimalReport:
    objective: float
    feasible: bool
    violations: dict = field(default_factory=dict)


def candidate_matrix(inst: DualSdpInstance, candidate: PrimalCandidate) -> np.ndarray:
    if candidate.coeffs is not None:
        if len(candidate.coeffs) != inst.dtil:
            raise ValueError(f"expected {inst.dtil} coefficients")
        return np.tensordot(np.asarray(candidate.coeffs, dtype=float), inst.matrices, axes=1)
    size = inst.matrices.shape[1]
    indicator = np.zeros(size)
    for g in candidate.code:
        indicator[rank(g)] = 1.0
    return np.outer(indicator, indicator) / len(candidate.code)


def evaluate_primal(n, dmin, candidate: PrimalCandidate) -> PrimalReport:
    """Objective value and constraint residuals of a primal candidate."""
    inst = dual_sdp_instance(n, dmin)
    m = candidate_matrix(inst, candidate)
    eigenvalues, _ = symmetric_eigen(m)

    violations = {}
    psd_defect = max(0.0, -float(eigenvalues[0]))
    if psd_defect > 1e-8:
        violations["psd"] = psd_defect
    trace_defect = abs(float(np.trace(m)) - 1.0)
    if trace_defect > 1e-9:
        violations["trace"] = trace_defect
    for j in range(1, inst.dtil):
        t = float(np.tensordot(inst.matrices[j], m))
        if t < -1e-9:
            violations[f"nonneg[{j + 1}]"] = -t
        if inst.deltas[j] < dmin and abs(t) > 1e-9:
            violations[f"equality[{j + 1}]"] = abs(t)

    return PrimalReport(objective=float(m.sum()), feasible=not violations,
                        violations=violations)


def embed_code(code, dmin) -> PrimalCandidate:
    """Wrap a code as a primal candidate; its objective equals the code size.
    Rejects inputs whose pairwise distance dips below dmin."""
    code = tuple(code)
    if not code:
        raise ValueError("code must be non-empty")
    for a in range(len(code)):
        for b in range(a + 1, len(code)):
            dist = kendall_distance(code[a], code[b])
            if dist < dmin:
                raise ValueError(
                    f"not a dmin={dmin} code: pair {code[a]} / {code[b]} at distance {dist}")
    return PrimalCandidate(code=code)
