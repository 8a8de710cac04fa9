"""Conjugation-orbit class decompositions and their symmetrized forms.

Three conjugating subgroups matter here: the whole symmetric group (classes
are cycle types), the two-element subgroup generated by the order-reversing
involution w0 (the "length" decomposition, whose symmetrized classes carry a
well-defined distance delta), and the centralizer of w0 (whose symmetrized
classes carry the max-distance gamma and the 0-1 expansion coefficients used
by the bound LP).

Elements are indexed by the lexicographic rank of their one-line array.
Class ids are 1-based, assigned in order of each orbit's lexicographically
minimal member, so the identity's class is always id 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import ResourceCapError
from .perms import (
    Perm,
    compose,
    cycle_type,
    enumerate_group,
    inverse,
    inversions,
    longest_element,
    rank,
    theta_generators,
)


class SubgroupKind(str, Enum):
    FULL = "full"
    PSI = "psi"
    THETA = "theta"


FULL_CAP = 12
CONJUGATION_CAP = 10       # psi / theta decompositions walk all n! elements
CONJUGATION_HARD_CAP = 11  # ~40M-element label arrays; opt-in only
EXPLICIT_CAP = 6           # order-n! dense matrices are a testing oracle
LABEL_CACHE_CAP = 8        # label arrays beyond this stay out of disk cache

CACHE_SCHEMA = {
    SubgroupKind.FULL: "class_full",
    SubgroupKind.PSI: "class_psi",
    SubgroupKind.THETA: "class_theta",
}


@dataclass(frozen=True)
class ConjClass:
    """One conjugation orbit: 1-based id, lexicographically minimal member,
    orbit size, and (for psi/theta kinds) the maximal inversion count over
    the orbit."""

    id: int
    representative: Perm
    size: int
    max_length: int | None = None


@dataclass(frozen=True)
class SymClass:
    """A conjugation orbit joined with the orbit of its inverses.

    ``delta`` is the common inversion count of all members (length kind
    only); ``gamma`` is the maximal inversion count over all members (theta
    kind only).
    """

    id: int
    member_class_ids: tuple[int, ...]
    representative: Perm
    size: int
    delta: int | None = None
    gamma: int | None = None


class ClassDecomposition:
    """Orbit partition of S_n under conjugation by the chosen subgroup.

    Per-class data is held in flat arrays; ``classes`` materializes
    :class:`ConjClass` records on demand (the length decomposition of S_10
    has ~1.8M orbits, so bulk materialization is deliberate, not automatic).
    """

    def __init__(self, n, kind, rep_rows, sizes, rep_lengths, max_lengths,
                 inverse_ids, labels, type_index=None):
        self.n = n
        self.kind = kind
        self.rep_rows = rep_rows          # (num_classes, n) int8, lex-min members
        self.sizes = sizes                # int64
        self.rep_lengths = rep_lengths    # int16, inversion count of each rep
        self.max_lengths = max_lengths    # int16 or None (full kind)
        self.inverse_ids = inverse_ids    # int32, 1-based id of the inverse class
        self.labels = labels              # int32 rank -> 0-based class, or None
        self._type_index = type_index     # cycle type -> id (full kind)

    @property
    def num_classes(self) -> int:
        return len(self.rep_rows)

    def representative(self, class_id: int) -> Perm:
        return tuple(int(v) for v in self.rep_rows[class_id - 1])

    def class_of(self, g: Perm) -> int:
        """1-based class id of g."""
        if self._type_index is not None:
            return self._type_index[cycle_type(g)]
        if self.labels is None:
            raise RuntimeError(
                "element->class labels were not retained for this decomposition "
                f"(n={self.n}, kind={self.kind.value}); recompute without cache")
        return int(self.labels[rank(g)]) + 1

    @property
    def classes(self) -> tuple[ConjClass, ...]:
        out = []
        for i in range(self.num_classes):
            out.append(ConjClass(
                id=i + 1,
                representative=tuple(int(v) for v in self.rep_rows[i]),
                size=int(self.sizes[i]),
                max_length=None if self.max_lengths is None else int(self.max_lengths[i]),
            ))
        return tuple(out)


# -- vectorized machinery over the full element table ------------------------

@lru_cache(maxsize=3)
def permutation_table(n: int) -> np.ndarray:
    """All n! one-line arrays as an (n!, n) int8 matrix in lexicographic
    order.  Built recursively: block v holds v followed by the table of the
    remaining values in order."""
    if n == 1:
        table = np.array([[1]], dtype=np.int8)
    else:
        prev = permutation_table(n - 1)
        size = math.factorial(n - 1)
        table = np.empty((n * size, n), dtype=np.int8)
        for v in range(1, n + 1):
            remap = np.array([x for x in range(1, n + 1) if x != v], dtype=np.int8)
            block = table[(v - 1) * size: v * size]
            block[:, 0] = v
            block[:, 1:] = remap[prev - 1]
    table.setflags(write=False)
    return table


def _rank_rows(rows: np.ndarray) -> np.ndarray:
    """Lexicographic rank of each one-line row (vectorized Lehmer code)."""
    n = rows.shape[1]
    fact = [math.factorial(k) for k in range(n)]
    ranks = np.zeros(len(rows), dtype=np.int64)
    for i in range(n - 1):
        smaller = (rows[:, i + 1:] < rows[:, i: i + 1]).sum(axis=1, dtype=np.int64)
        ranks += smaller * fact[n - 1 - i]
    return ranks


def _row_lengths(rows: np.ndarray) -> np.ndarray:
    """Inversion count of each row."""
    n = rows.shape[1]
    lengths = np.zeros(len(rows), dtype=np.int16)
    for i in range(n - 1):
        lengths += (rows[:, i + 1:] < rows[:, i: i + 1]).sum(axis=1, dtype=np.int16)
    return lengths


def _conjugation_map(table: np.ndarray, g: Perm) -> np.ndarray:
    """rank -> rank map of x -> g x g^-1 over the whole table."""
    ginv = inverse(g)
    cols = np.array([ginv[i] - 1 for i in range(len(g))], dtype=np.intp)
    gimg = np.array(g, dtype=table.dtype)
    conjugated = gimg[table[:, cols] - 1]
    return _rank_rows(conjugated).astype(np.int32)


def _orbit_labels(size: int, maps: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    """Connected components of the maps, labeled in order of smallest member."""
    labels = np.full(size, -1, dtype=np.int32)
    rep_ranks = []
    cursor = 0
    while True:
        while cursor < size and labels[cursor] >= 0:
            cursor += 1
        if cursor == size:
            break
        cid = len(rep_ranks)
        rep_ranks.append(cursor)
        labels[cursor] = cid
        frontier = np.array([cursor], dtype=np.int64)
        while frontier.size:
            nxt = np.unique(np.concatenate([m[frontier] for m in maps]))
            nxt = nxt[labels[nxt] < 0]
            labels[nxt] = cid
            frontier = nxt
    return labels, np.array(rep_ranks, dtype=np.int64)


def _involution_labels(size: int, m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orbit labels for a single involutive map (orbits of size 1 or 2)."""
    idx = np.arange(size, dtype=np.int64)
    rep_ranks = np.flatnonzero(m >= idx)
    labels = np.searchsorted(rep_ranks, np.minimum(idx, m)).astype(np.int32)
    return labels, rep_ranks


def _conjugation_decomposition(n: int, kind: SubgroupKind) -> ClassDecomposition:
    table = permutation_table(n)
    if kind is SubgroupKind.PSI:
        w0map = _conjugation_map(table, longest_element(n))
        labels, rep_ranks = _involution_labels(len(table), w0map)
    else:
        maps = [_conjugation_map(table, g) for g in theta_generators(n)]
        labels, rep_ranks = _orbit_labels(len(table), maps)

    lengths = _row_lengths(table)
    sizes = np.bincount(labels, minlength=len(rep_ranks)).astype(np.int64)
    max_lengths = np.zeros(len(rep_ranks), dtype=np.int16)
    np.maximum.at(max_lengths, labels, lengths)

    rep_rows = table[rep_ranks].copy()
    inv_rows = (np.argsort(rep_rows, axis=1) + 1).astype(np.int8)
    inverse_ids = (labels[_rank_rows(inv_rows)] + 1).astype(np.int32)

    return ClassDecomposition(
        n=n, kind=kind,
        rep_rows=rep_rows,
        sizes=sizes,
        rep_lengths=lengths[rep_ranks].copy(),
        max_lengths=max_lengths,
        inverse_ids=inverse_ids,
        labels=labels,
    )


# -- cycle-type classes of the full group (no enumeration needed) ------------

def _min_rep_for_type(n: int, parts: tuple[int, ...]) -> Perm:
    # ascending cycle lengths on consecutive blocks give the lex-min member;
    # checked exhaustively against brute force for n <= 6
    images: list[int] = []
    start = 1
    for part in sorted(parts):
        block = list(range(start, start + part))
        images.extend(block[1:] + block[:1])
        start += part
    return tuple(images)


def _type_class_size(n: int, parts: tuple[int, ...]) -> int:
    z = 1
    for k in set(parts):
        mult = parts.count(k)
        z *= k ** mult * math.factorial(mult)
    return math.factorial(n) // z


def _full_decomposition(n: int) -> ClassDecomposition:
    from .characters import partitions  # deferred: characters imports this module

    entries = []
    for parts in partitions(n):
        rep = _min_rep_for_type(n, parts)
        entries.append((rep, parts))
    entries.sort()

    rep_rows = np.array([rep for rep, _ in entries], dtype=np.int8)
    sizes = np.array([_type_class_size(n, parts) for _, parts in entries], dtype=np.int64)
    rep_lengths = np.array([inversions(rep) for rep, _ in entries], dtype=np.int16)
    type_index = {parts: i + 1 for i, (_, parts) in enumerate(entries)}
    inverse_ids = np.arange(1, len(entries) + 1, dtype=np.int32)

    return ClassDecomposition(
        n=n, kind=SubgroupKind.FULL,
        rep_rows=rep_rows,
        sizes=sizes,
        rep_lengths=rep_lengths,
        max_lengths=None,
        inverse_ids=inverse_ids,
        labels=None,
        type_index=type_index,
    )


@lru_cache(maxsize=8)
def _decomposition(n: int, kind: SubgroupKind) -> ClassDecomposition:
    if kind is SubgroupKind.FULL:
        return _full_decomposition(n)
    return _conjugation_decomposition(n, kind)


def _check_cap(n: int, kind: SubgroupKind, allow_large: bool) -> None:
    if kind is SubgroupKind.FULL:
        if n > FULL_CAP:
            raise ResourceCapError(f"class_decomposition(full) capped at n={FULL_CAP}")
        return
    cap = CONJUGATION_HARD_CAP if allow_large else CONJUGATION_CAP
    if n > cap:
        raise ResourceCapError(
            f"class_decomposition({kind.value}) capped at n={cap}"
            + ("" if allow_large else "; pass allow_large for n=11"))


def class_decomposition(n, kind, *, allow_large=False, cache=None) -> ClassDecomposition:
    """Orbits of x -> b x b^-1 over the chosen subgroup, deterministically
    ordered by lexicographically minimal member (identity's orbit first)."""
    kind = SubgroupKind(kind)
    if n < 1:
        raise ValueError("n must be positive")
    _check_cap(n, kind, allow_large)
    if cache is not None:
        payload = cache.load(CACHE_SCHEMA[kind], n)
        if payload is not None:
            return _decomposition_from_payload(n, kind, payload)
    decomp = _decomposition(n, kind)
    if cache is not None:
        cache.store(CACHE_SCHEMA[kind], n, _decomposition_to_payload(decomp))
    return decomp


def symmetrize(decomp: ClassDecomposition) -> tuple[SymClass, ...]:
    """Join each class with the class of its inverses.

    Attaches delta (length kind: the common inversion count) or gamma (theta
    kind: the maximal inversion count over the joined orbit).
    """
    num = decomp.num_classes
    seen = np.zeros(num + 1, dtype=bool)
    syms: list[SymClass] = []
    for cid in range(1, num + 1):
        if seen[cid]:
            continue
        partner = int(decomp.inverse_ids[cid - 1])
        seen[cid] = seen[partner] = True
        ids = (cid,) if partner == cid else (cid, partner)
        size = int(sum(decomp.sizes[i - 1] for i in ids))
        delta = gamma_val = None
        if decomp.kind is SubgroupKind.PSI:
            delta = int(decomp.rep_lengths[cid - 1])
        elif decomp.kind is SubgroupKind.THETA:
            gamma_val = int(max(decomp.max_lengths[i - 1] for i in ids))
        syms.append(SymClass(
            id=len(syms) + 1,
            member_class_ids=ids,
            representative=decomp.representative(cid),
            size=size,
            delta=delta,
            gamma=gamma_val,
        ))
    return tuple(syms)


def symmetrized_count(decomp: ClassDecomposition) -> int:
    """Number of symmetrized classes, without materializing them."""
    ids = np.arange(1, decomp.num_classes + 1, dtype=np.int64)
    return int(np.count_nonzero(decomp.inverse_ids >= ids))


def gamma(theta_sym: SymClass, psi_syms, theta: ClassDecomposition) -> int:
    """Max delta over the length-CC symmetrized classes inside a theta class.

    This is the refinement definition; ``symmetrize`` computes the same
    number directly from per-orbit inversion maxima, and the two routes are
    cross-checked in tests.
    """
    best = -1
    for s in psi_syms:
        if theta.class_of(s.representative) in theta_sym.member_class_ids:
            best = max(best, s.delta)
    return best


@dataclass(frozen=True)
class TCoefficients:
    """0-1 expansion data tying conjugacy classes to symmetrized theta
    classes.

    ``rows[l] = (i_plain, i_shifted)`` says theta-sym class l+1 lies inside
    conjugacy class i_plain, and its w0-translate lies inside conjugacy class
    i_shifted; every other coefficient in the row is zero.
    """

    n: int
    d: int
    rows: tuple[tuple[int, int], ...]


def t_coefficients(n, *, allow_large=False, cache=None) -> TCoefficients:
    """For each symmetrized theta class with representative x: the conjugacy
    class of x and the conjugacy class of x*w0."""
    if cache is not None:
        payload = cache.load("t_coefficients", n)
        if payload is not None:
            return TCoefficients(
                n=n, d=int(payload["d"]),
                rows=tuple((int(a), int(b)) for a, b in payload["rows"]))
    full = class_decomposition(n, SubgroupKind.FULL)
    theta = class_decomposition(n, SubgroupKind.THETA, allow_large=allow_large, cache=cache)
    w0 = longest_element(n)
    rows = []
    for sym in symmetrize(theta):
        i_plain = full.class_of(sym.representative)
        i_shifted = full.class_of(compose(sym.representative, w0))
        rows.append((i_plain, i_shifted))
    result = TCoefficients(n=n, d=full.num_classes, rows=tuple(rows))
    if cache is not None:
        cache.store("t_coefficients", n, {"d": result.d, "rows": [list(r) for r in result.rows]})
    return result


# -- explicit order-n! matrices (testing oracle) ------------------------------

@lru_cache(maxsize=2)
def product_rank_table(n: int) -> np.ndarray:
    """(n!, n!) matrix whose (x, y) entry is the rank of x^-1 y."""
    if n > EXPLICIT_CAP:
        raise ResourceCapError(f"product_rank_table capped at n={EXPLICIT_CAP}")
    table = permutation_table(n)
    size = len(table)
    out = np.empty((size, size), dtype=np.int32)
    for xr in range(size):
        xinv = (np.argsort(table[xr]) + 1).astype(np.int8)
        out[xr] = _rank_rows(xinv[table - 1])
    out.setflags(write=False)
    return out


def element_class_labels(decomp: ClassDecomposition) -> np.ndarray:
    """0-based class index per element rank (n <= EXPLICIT_CAP for the full
    kind, where labels are not retained during construction)."""
    if decomp.labels is not None:
        return decomp.labels
    elems = enumerate_group(decomp.n)
    return np.array([decomp.class_of(g) - 1 for g in elems], dtype=np.int32)


def explicit_matrices(n, kind, *, decomp=None) -> list[np.ndarray]:
    """The 0-1 matrices with (x, y) entry 1 iff x^-1 y lies in class i, in
    class-id order.  Rows and columns follow the canonical element order."""
    if n > EXPLICIT_CAP:
        raise ResourceCapError(f"explicit_matrices capped at n={EXPLICIT_CAP}")
    if decomp is None:
        decomp = class_decomposition(n, kind)
    labels = element_class_labels(decomp)
    by_rank = labels[product_rank_table(n)]
    return [(by_rank == k).astype(np.float64) for k in range(decomp.num_classes)]


def symmetrized_matrices(n, kind, *, decomp=None) -> list[np.ndarray]:
    """Symmetrized counterparts of :func:`explicit_matrices`."""
    if decomp is None:
        decomp = class_decomposition(n, kind)
    mats = explicit_matrices(n, kind, decomp=decomp)
    out = []
    for sym in symmetrize(decomp):
        acc = mats[sym.member_class_ids[0] - 1]
        if len(sym.member_class_ids) == 2:
            acc = acc + mats[sym.member_class_ids[1] - 1]
        out.append(acc)
    return out


def w_matrix(n: int) -> np.ndarray:
    """Permutation matrix of right-translation by w0: entry (x, y) is 1 iff
    y = x w0.  Symmetric, orthogonal, and an involution since w0 is."""
    if n > EXPLICIT_CAP:
        raise ResourceCapError(f"w_matrix capped at n={EXPLICIT_CAP}")
    table = permutation_table(n)
    cols = _rank_rows(table[:, ::-1])  # one-line of x*w0 is x reversed
    mat = np.zeros((len(table), len(table)))
    mat[np.arange(len(table)), cols] = 1.0
    return mat


# -- disk-cache payload codecs ------------------------------------------------

def _decomposition_to_payload(decomp: ClassDecomposition) -> dict:
    payload = {
        "reps": decomp.rep_rows.tolist(),
        "sizes": [str(int(s)) for s in decomp.sizes],
        "rep_lengths": decomp.rep_lengths.tolist(),
        "inverse_ids": decomp.inverse_ids.tolist(),
    }
    if decomp.max_lengths is not None:
        payload["max_lengths"] = decomp.max_lengths.tolist()
    if decomp.labels is not None and decomp.n <= LABEL_CACHE_CAP:
        payload["labels"] = decomp.labels.tolist()
    return payload


def _decomposition_from_payload(n, kind, payload) -> ClassDecomposition:
    type_index = None
    if kind is SubgroupKind.FULL:
        reps = [tuple(r) for r in payload["reps"]]
        type_index = {cycle_type(rep): i + 1 for i, rep in enumerate(reps)}
    return ClassDecomposition(
        n=n, kind=kind,
        rep_rows=np.array(payload["reps"], dtype=np.int8),
        sizes=np.array([int(s) for s in payload["sizes"]], dtype=np.int64),
        rep_lengths=np.array(payload["rep_lengths"], dtype=np.int16),
        max_lengths=(np.array(payload["max_lengths"], dtype=np.int16)
                     if "max_lengths" in payload else None),
        inverse_ids=np.array(payload["inverse_ids"], dtype=np.int32),
        labels=(np.array(payload["labels"], dtype=np.int32)
                if "labels" in payload else None),
        type_index=type_index,
    )
