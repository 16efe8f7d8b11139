"""Permutations, rank subsets, compositions and ordered set partitions.

Subsets of ``[n-1]`` are encoded as integer bitmasks: rank ``i`` lives in
bit ``i - 1``.  Permutations are tuples in one-line notation with values
``1..n``; position ``k`` (0-based) holds the image of the ``k``-th element.
"""

from __future__ import annotations

import itertools
from contextlib import contextmanager
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

Permutation = tuple
Composition = tuple
OrderedSetPartition = tuple  # tuple of frozensets, in color order

GUARDS = {
    "permutations": 12,
    "set_partitions": 10,
    "linear_extensions": 10,
    "oracle": 10,
    "edge_subsets": 20,
    "desk": 6,
    "search": 6,
}


class GuardError(ValueError):
    """Raised when a request exceeds a configured enumeration limit."""


def check_guard(kind: str, n: int) -> None:
    limit = GUARDS[kind]
    if n > limit:
        raise GuardError(f"{kind}: size {n} exceeds guard {limit} (use a guard override)")


@contextmanager
def guard_override(**limits):
    """Temporarily raise (or lower) enumeration guards."""
    saved = dict(GUARDS)
    unknown = set(limits) - set(GUARDS)
    if unknown:
        raise KeyError(f"unknown guards: {sorted(unknown)}")
    GUARDS.update(limits)
    try:
        yield GUARDS
    finally:
        GUARDS.clear()
        GUARDS.update(saved)


# -- rank subsets ---------------------------------------------------------

def to_mask(ranks: Iterable[int]) -> int:
    m = 0
    for i in ranks:
        if i < 1:
            raise ValueError(f"rank {i} is not positive")
        m |= 1 << (i - 1)
    return m


def members(mask: int) -> tuple:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def check_subset(mask: int, n: int) -> None:
    if mask < 0 or mask >> max(n - 1, 0):
        raise ValueError(f"subset {members(mask)} is not contained in [{n - 1}]")


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def comp_of_subset(mask: int, n: int) -> Composition:
    """``{s1 < ... < sk}`` -> ``(s1, s2 - s1, ..., n - sk)``."""
    check_subset(mask, n)
    parts = []
    prev = 0
    for s in members(mask):
        parts.append(s - prev)
        prev = s
    parts.append(n - prev)
    return tuple(parts)


def subset_of_comp(comp: Sequence[int]) -> int:
    if not comp or any(p < 1 for p in comp):
        raise ValueError(f"not a composition: {comp!r}")
    m = 0
    total = 0
    for p in comp[:-1]:
        total += p
        m |= 1 << (total - 1)
    return m


def compositions(n: int) -> Iterator[Composition]:
    for mask in range(1 << (n - 1)):
        yield comp_of_subset(mask, n)


# -- permutations ---------------------------------------------------------

def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(1, len(p) + 1))


def descent_set(p: Sequence[int]) -> int:
    """Bitmask of ``{i : p(i) > p(i+1)}``."""
    m = 0
    for i in range(len(p) - 1):
        if p[i] > p[i + 1]:
            m |= 1 << i
    return m


def inverse(p: Sequence[int]) -> Permutation:
    inv = [0] * len(p)
    for i, v in enumerate(p, start=1):
        inv[v - 1] = i
    return tuple(inv)


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """``p o q``: apply ``q`` first."""
    return tuple(p[v - 1] for v in q)


def enumerate_permutations(n: int) -> Iterator[Permutation]:
    """All permutations of ``[n]`` in lexicographic order."""
    if n < 1:
        raise ValueError("n must be positive")
    check_guard("permutations", n)
    return itertools.permutations(range(1, n + 1))


def standardize(values: Sequence) -> Permutation:
    """Order-preserving collapse of distinct values onto ``1..m``."""
    order = sorted(range(len(values)), key=values.__getitem__)
    out = [0] * len(values)
    for rank, i in enumerate(order, start=1):
        out[i] = rank
    return tuple(out)


def min_permutation_with_descents(mask: int, n: int) -> Permutation:
    """The shortest permutation of ``[n]`` whose descent set is ``mask``.

    Each maximal run of consecutive descents ``i, i+1, ..., j-1`` becomes
    the reversed block ``j, j-1, ..., i``; everything else is fixed.
    """
    check_subset(mask, n)
    out = list(range(1, n + 1))
    i = 1
    while i < n:
        if mask >> (i - 1) & 1:
            j = i
            while j < n and mask >> (j - 1) & 1:
                j += 1
            out[i - 1:j] = reversed(out[i - 1:j])
            i = j
        else:
            i += 1
    return tuple(out)


# -- ordered set partitions -----------------------------------------------

def enumerate_ordered_set_partitions(V: Iterable) -> Iterator[OrderedSetPartition]:
    """Every ordered set partition of ``V`` exactly once.

    First blocks are taken in order of size, then lexicographically by the
    position of their members in ``V``.
    """
    items = tuple(V)
    if not items:
        raise ValueError("vertex set must be nonempty")
    check_guard("set_partitions", len(items))

    def rec(rest):
        if not rest:
            yield ()
            return
        for k in range(1, len(rest) + 1):
            for block in itertools.combinations(rest, k):
                chosen = set(block)
                remaining = tuple(x for x in rest if x not in chosen)
                head = frozenset(block)
                for tail in rec(remaining):
                    yield (head,) + tail

    return rec(items)


def boundary_set(o: Sequence) -> int:
    """Cumulative block sizes, excluding the total."""
    m = 0
    total = 0
    for block in o[:-1]:
        total += len(block)
        m |= 1 << (total - 1)
    return m


@lru_cache(maxsize=None)
def fubini(n: int) -> int:
    """Number of ordered set partitions of an ``n``-set."""
    if n == 0:
        return 1
    return sum(comb(n, k) * fubini(n - k) for k in range(1, n + 1))
