"""The two distance metrics and the sphere-packing / Singleton comparison
bounds.

Distances are bi-invariant under different groups: the moved-point metric is
invariant under all left and right translations, while the adjacent-swap
metric is invariant on the left by everything but on the right only by the
order-reversing involution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import SizeMismatchError
from .perms import Perm, compose, inverse, inversions


def kendall_distance(g: Perm, h: Perm) -> int:
    """Minimum number of adjacent transpositions turning g into h; computed
    as the inversion count of g^-1 h."""
    if len(g) != len(h):
        raise SizeMismatchError(f"degree mismatch: {len(g)} vs {len(h)}")
    return inversions(compose(inverse(g), h))


def hamming_distance(g: Perm, h: Perm) -> int:
    """Number of points moved by g^-1 h.  Never equals 1 for g != h."""
    if len(g) != len(h):
        raise SizeMismatchError(f"degree mismatch: {len(g)} vs {len(h)}")
    return sum(1 for a, b in zip(g, h) if a != b)


@dataclass(frozen=True)
class MahonianRow:
    """Counts of permutations of degree n by inversion number.

    ``counts[k]`` is the number of permutations with exactly k inversions;
    the row has length n(n-1)/2 + 1, sums to n!, and is symmetric.
    """

    n: int
    counts: tuple[int, ...]


def mahonian_row(n: int) -> MahonianRow:
    """Inversion census of S_n via the product of truncated geometric series
    (1 + q + ... + q^(i-1)) for i = 1..n, with exact integer arithmetic."""
    counts = [1]
    for i in range(2, n + 1):
        # multiply by (1 + q + ... + q^(i-1)) using a sliding window sum
        prev = counts
        out = [0] * (len(prev) + i - 1)
        window = 0
        for k in range(len(out)):
            if k < len(prev):
                window += prev[k]
            if k - i >= 0:
                window -= prev[k - i]
            out[k] = window
        counts = out
    return MahonianRow(n=n, counts=tuple(counts))


def _check_dmin(n: int, dmin: int) -> None:
    top = n * (n - 1) // 2
    if not 1 <= dmin <= top:
        raise ValueError(f"dmin={dmin} out of range 1..{top} for n={n}")


def kendall_ball_size(n: int, radius: int) -> int:
    """Number of permutations within adjacent-swap distance ``radius`` of a
    fixed center (the metric is transitive, so the center is irrelevant)."""
    row = mahonian_row(n).counts
    radius = min(radius, len(row) - 1)
    return sum(row[: radius + 1])


def hamming_bound(n: int, dmin: int) -> int:
    """Sphere-packing bound: floor(n! / B(r)) with r = floor((dmin-1)/2) and
    B the adjacent-swap ball size."""
    _check_dmin(n, dmin)
    return math.factorial(n) // kendall_ball_size(n, (dmin - 1) // 2)


def singleton_bound(n: int, dmin: int) -> int:
    """Projection-style bound: m! for the least m >= 2 whose maximal
    inversion count m(m-1)/2 strictly exceeds n(n-1)/2 - dmin.

    The closed form is pinned by an exhaustive test against every published
    value this package reproduces; a mismatch there is a build failure.
    """
    _check_dmin(n, dmin)
    slack = n * (n - 1) // 2 - dmin
    for m in range(2, n + 1):
        if m * (m - 1) // 2 > slack:
            return math.factorial(m)
    return math.factorial(n)
