"""Irreducible character data of the symmetric group.

Characters are computed by recursive border-strip removal with memoization,
entirely in exact integer arithmetic.  The derived spectral quantities are
the eigenvalues of the conjugacy-class sum matrices on each isotypic block
(p), their column sums (c), and the nonzero-ness flags of the two projector
families obtained by splitting each isotypic block with the w0-translation
involution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .classes import SubgroupKind, class_decomposition
from .errors import SizeMismatchError
from .perms import cycle_type, longest_element

Partition = tuple[int, ...]


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n as weakly decreasing tuples, in descending
    lexicographic order, so (n,) — the trivial representation's label —
    comes first.

    >>> partitions(4)
    ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    """
    if n < 0:
        raise ValueError("n must be non-negative")

    def gen(remaining: int, limit: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, limit), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return tuple(gen(n, n))


def _beta_set(lam: Partition) -> list[int]:
    # strictly decreasing first-column hook lengths lam_i + (len - 1 - i)
    size = len(lam)
    return [lam[i] + (size - 1 - i) for i in range(size)]


def _partition_from_beta(beta: list[int]) -> Partition:
    beta = sorted(beta, reverse=True)
    size = len(beta)
    parts = [beta[i] - (size - 1 - i) for i in range(size)]
    return tuple(p for p in parts if p > 0)


@lru_cache(maxsize=None)
def character(lam: Partition, mu: Partition) -> int:
    """Character value of the irreducible labeled by lam on the class of
    cycle type mu, by border-strip removal on the beta-set of lam."""
    if sum(lam) != sum(mu):
        raise SizeMismatchError(f"partition sizes differ: {lam} vs {mu}")
    if not mu:
        return 1
    k = mu[0]
    rest = mu[1:]
    beta = _beta_set(lam)
    beta_set = set(beta)
    total = 0
    for pos, b in enumerate(beta):
        if b < k or (b - k) in beta_set:
            continue
        # strip height = number of beta entries strictly between b-k and b
        height = sum(1 for x in beta if b - k < x < b)
        sign = -1 if height % 2 else 1
        new_beta = beta[:pos] + [b - k] + beta[pos + 1:]
        total += sign * character(_partition_from_beta(new_beta), rest)
    return total


def dimension(lam: Partition) -> int:
    """Dimension of the irreducible labeled by lam (hook length formula)."""
    n = sum(lam)
    hooks = 1
    for i in range(len(lam)):
        for j in range(lam[i]):
            arm = lam[i] - j - 1
            leg = sum(1 for r in range(i + 1, len(lam)) if lam[r] > j)
            hooks *= arm + leg + 1
    return math.factorial(n) // hooks


@dataclass(frozen=True)
class CharacterTable:
    """Full integer character table; rows and columns are both indexed by
    :func:`partitions` order (rows = irreducibles, columns = cycle types)."""

    n: int
    order: tuple[Partition, ...]
    chi: tuple[tuple[int, ...], ...]
    dims: tuple[int, ...]


def character_table(n, *, cache=None) -> CharacterTable:
    if cache is not None:
        payload = cache.load("character_table", n)
        if payload is not None:
            return CharacterTable(
                n=n,
                order=tuple(tuple(p) for p in payload["order"]),
                chi=tuple(tuple(int(v) for v in row) for row in payload["chi"]),
                dims=tuple(int(v) for v in payload["dims"]),
            )
    order = partitions(n)
    chi = tuple(tuple(character(lam, mu) for mu in order) for lam in order)
    dims = tuple(row[-1] for row in chi)  # column of 1^n is the last
    table = CharacterTable(n=n, order=order, chi=chi, dims=dims)
    if cache is not None:
        cache.store("character_table", n, {
            "order": [list(p) for p in order],
            "chi": [[str(v) for v in row] for row in chi],
            "dims": [str(v) for v in dims],
        })
    return table


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalue data of the class-sum matrices.

    ``p[i][j]`` is the eigenvalue of class-sum i (conjugacy classes in
    class-id order) on the isotypic block of irreducible j (partitions
    order): |C_i| * chi_j(C_i) / dim_j, always an exact integer.  ``c`` holds
    the column sums (n!, 0, 0, ...).  ``m1_nonzero[j]`` / ``m2_nonzero[j]``
    flag whether the symmetric/antisymmetric halves of block j under
    w0-translation are nonzero.
    """

    n: int
    order: tuple[Partition, ...]
    class_types: tuple[Partition, ...]
    class_sizes: tuple[int, ...]
    p: tuple[tuple[int, ...], ...]
    c: tuple[int, ...]
    m1_nonzero: tuple[bool, ...]
    m2_nonzero: tuple[bool, ...]


def spectral_data(n, *, cache=None) -> SpectralData:
    """Spectral summaries consumed by the bound LP; the i index follows the
    conjugacy-class ordering of :func:`~kendall_bounds.classes.class_decomposition`."""
    table = character_table(n, cache=cache)
    full = class_decomposition(n, SubgroupKind.FULL)
    col_of = {mu: k for k, mu in enumerate(table.order)}

    class_types = tuple(cycle_type(full.representative(i + 1)) for i in range(full.num_classes))
    class_sizes = tuple(int(s) for s in full.sizes)

    p_rows = []
    for i, mu in enumerate(class_types):
        mu_col = col_of[mu]
        row = []
        for j in range(len(table.order)):
            num = class_sizes[i] * table.chi[j][mu_col]
            f = table.dims[j]
            if num % f:
                raise ArithmeticError(f"class-sum eigenvalue not integral at {mu}, {table.order[j]}")
            row.append(num // f)
        p_rows.append(tuple(row))

    c = tuple(sum(p_rows[i][j] for i in range(len(class_types)))
              for j in range(len(table.order)))

    w0_type = cycle_type(longest_element(n))
    w0_col = col_of[w0_type]
    m1 = tuple(table.chi[j][w0_col] != -table.dims[j] for j in range(len(table.order)))
    m2 = tuple(table.chi[j][w0_col] != table.dims[j] for j in range(len(table.order)))

    return SpectralData(
        n=n, order=table.order, class_types=class_types, class_sizes=class_sizes,
        p=tuple(p_rows), c=c, m1_nonzero=m1, m2_nonzero=m2,
    )
