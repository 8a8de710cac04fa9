"""Permutations of {1..n} in one-line notation.

A permutation g is a tuple of n distinct integers in 1..n where the entry at
index i-1 is the image g(i).  All group machinery in this package works on
these tuples; the canonical ordering of S_n used for matrix indices and class
labels everywhere is the lexicographic order of the one-line arrays, which
coincides with Lehmer-code rank order (rank 0 is the identity).
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Sequence

from .errors import ResourceCapError, SizeMismatchError

Perm = tuple[int, ...]

# Enumerating S_11 (~40M elements) is possible but should never happen by
# accident; callers must opt in.
GROUP_ENUM_CAP = 10
GROUP_ENUM_HARD_CAP = 11


def is_permutation(images: Sequence[int]) -> bool:
    """Check that ``images`` is a bijection on {1..n}.

    >>> is_permutation((2, 1, 3))
    True
    >>> is_permutation((2, 2, 3))
    False
    """
    n = len(images)
    return sorted(images) == list(range(1, n + 1))


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(g: Perm, h: Perm) -> Perm:
    """The product gh, acting as (gh)(i) = g(h(i))."""
    if len(g) != len(h):
        raise SizeMismatchError(f"cannot compose permutations of degree {len(g)} and {len(h)}")
    return tuple(g[x - 1] for x in h)


def inverse(g: Perm) -> Perm:
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x - 1] = i + 1
    return tuple(inv)


def longest_element(n: int) -> Perm:
    """The order-reversing permutation i -> n+1-i, the unique element of
    maximal inversion count n(n-1)/2; it is an involution.

    >>> longest_element(3)
    (3, 2, 1)
    """
    return tuple(range(n, 0, -1))


def inversions(g: Perm) -> int:
    """Number of pairs i < j with g(i) > g(j).

    This equals the minimum number of adjacent transpositions whose product
    is g (the Coxeter length); the equivalence is covered by an exhaustive
    breadth-first-search test for small n.
    """
    n = len(g)
    return sum(1 for i in range(n) for j in range(i + 1, n) if g[i] > g[j])


def cycles(g: Perm) -> list[tuple[int, ...]]:
    """Disjoint cycles of g, each starting at its smallest point, ordered by
    that smallest point."""
    seen = [False] * len(g)
    out = []
    for start in range(1, len(g) + 1):
        if seen[start - 1]:
            continue
        cyc = []
        p = start
        while not seen[p - 1]:
            seen[p - 1] = True
            cyc.append(p)
            p = g[p - 1]
        out.append(tuple(cyc))
    return out


def cycle_type(g: Perm) -> tuple[int, ...]:
    """Cycle lengths of g in weakly decreasing order.

    >>> cycle_type((3, 2, 1))
    (2, 1)
    """
    return tuple(sorted((len(c) for c in cycles(g)), reverse=True))


def from_cycles(n: int, cycs: Iterable[Sequence[int]]) -> Perm:
    """Build a permutation from disjoint cycles given in point notation."""
    images = list(range(1, n + 1))
    for cyc in cycs:
        for a, b in zip(cyc, cyc[1:] + type(cyc)([cyc[0]])):
            images[a - 1] = b
    perm = tuple(images)
    if not is_permutation(perm):
        raise ValueError(f"cycles {cycs!r} are not disjoint on 1..{n}")
    return perm


def enumerate_group(n: int, *, allow_large: bool = False) -> list[Perm]:
    """All n! permutations in lexicographic one-line order.

    This ordering is the canonical index set for every explicit matrix and
    class-label array in the package.  Degrees above 10 need
    ``allow_large=True`` (and 11 is the hard limit).
    """
    cap = GROUP_ENUM_HARD_CAP if allow_large else GROUP_ENUM_CAP
    if n > cap:
        raise ResourceCapError(f"enumerate_group(n={n}) exceeds cap {cap}")
    return list(itertools.permutations(range(1, n + 1)))


def rank(g: Perm) -> int:
    """Lexicographic index of g among all permutations of its degree."""
    n = len(g)
    r = 0
    for i in range(n - 1):
        smaller = sum(1 for j in range(i + 1, n) if g[j] < g[i])
        r += smaller * math.factorial(n - 1 - i)
    return r


def unrank(n: int, r: int) -> Perm:
    """Inverse of :func:`rank` for degree n."""
    if not 0 <= r < math.factorial(n):
        raise ValueError(f"rank {r} out of range for degree {n}")
    avail = list(range(1, n + 1))
    images = []
    for i in range(n, 0, -1):
        f = math.factorial(i - 1)
        d, r = divmod(r, f)
        images.append(avail.pop(d))
    return tuple(images)


def theta_subgroup(n: int) -> list[Perm]:
    """The centralizer of the order-reversing permutation, listed in
    lexicographic order.

    Its elements permute the pairs {i, n+1-i} among themselves, optionally
    swapping the two members of each pair; the middle point is fixed when n
    is odd.  Size 2^floor(n/2) * floor(n/2)!.
    """
    if n < 2:
        raise ValueError("theta_subgroup requires n >= 2")
    m = n // 2
    elements = []
    for sigma in itertools.permutations(range(m)):
        for flips in itertools.product((False, True), repeat=m):
            images = [0] * n
            if n % 2:
                images[m] = m + 1
            for i in range(m):
                j = sigma[i]
                lo, hi = j + 1, n - j
                if flips[i]:
                    lo, hi = hi, lo
                images[i] = lo
                images[n - 1 - i] = hi
            elements.append(tuple(images))
    elements.sort()
    return elements


def theta_generators(n: int) -> list[Perm]:
    """A small generating set for :func:`theta_subgroup`: adjacent swaps of
    the pairs {i, n+1-i} plus the flip of the first pair."""
    if n < 2:
        raise ValueError("theta_generators requires n >= 2")
    m = n // 2
    gens = [from_cycles(n, [(1, n)])]
    for i in range(1, m):
        gens.append(from_cycles(n, [(i, i + 1), (n - i, n + 1 - i)]))
    return gens
