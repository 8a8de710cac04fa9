"""Upper bounds on permutation code sizes under the Kendall tau metric."""

from .cache import Cache
from .characters import CharacterTable, character, character_table, partitions, spectral_data
from .classes import (
    ClassDecomposition,
    ConjClass,
    SubgroupKind,
    SymClass,
    TCoefficients,
    class_decomposition,
    explicit_matrices,
    gamma,
    symmetrize,
    symmetrized_count,
    t_coefficients,
    w_matrix,
)
from .errors import (
    KendallBoundsError,
    ResourceCapError,
    SizeMismatchError,
    SolverDiagnosticError,
)
from .lp_bound import (
    BoundReport,
    Theorem4Instance,
    build_instance,
    lp_bound,
    reconstruct_dual,
    verify_dual_feasible,
)
from .metrics import (
    MahonianRow,
    hamming_bound,
    hamming_distance,
    kendall_distance,
    mahonian_row,
    singleton_bound,
)
from .perms import (
    compose,
    cycle_type,
    enumerate_group,
    identity,
    inverse,
    inversions,
    longest_element,
    theta_subgroup,
)
from .sdp import (
    DualSdpInstance,
    PrimalCandidate,
    embed_code,
    evaluate_primal,
    solve_dual_sdp,
    symmetric_eigen,
)
from .search import SearchResult, max_code

__all__ = [name for name in dir() if not name.startswith("_")]
