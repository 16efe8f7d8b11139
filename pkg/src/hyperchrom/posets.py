"""Finite posets, linear extensions, (P, omega)-partitions and order insertion."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterator, Mapping, Sequence

from .combinatorics import check_guard, descent_set, inverse
from .hypergraph import Hypertree


class PosetCycleError(ValueError):
    def __init__(self, witness):
        self.witness = tuple(witness)
        super().__init__(f"order relations contain a cycle: {' < '.join(map(str, self.witness))}")


@dataclass(frozen=True)
class TotalOrder:
    """Elements listed from least to greatest."""

    sequence: tuple

    def __post_init__(self):
        if len(set(self.sequence)) != len(self.sequence):
            raise ValueError("total order repeats an element")

    @cached_property
    def rank(self) -> dict:
        return {x: i for i, x in enumerate(self.sequence, start=1)}

    @property
    def elements(self) -> frozenset:
        return frozenset(self.sequence)

    def lt(self, x, y) -> bool:
        return self.rank[x] < self.rank[y]

    def restrict(self, subset) -> "TotalOrder":
        subset = set(subset)
        return TotalOrder(tuple(x for x in self.sequence if x in subset))

    def __len__(self):
        return len(self.sequence)


@dataclass(frozen=True)
class FinitePoset:
    """Strict order on ``elements`` stored as a reachability matrix.

    ``above[i]`` is a bitmask of the positions ``j`` with
    ``elements[i] < elements[j]``.
    """

    elements: tuple
    above: tuple

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    def lt(self, x, y) -> bool:
        return bool(self.above[self.index[x]] >> self.index[y] & 1)

    def relations(self) -> list:
        return [(x, self.elements[j]) for i, x in enumerate(self.elements)
                for j in range(len(self.elements)) if self.above[i] >> j & 1]

    def covers(self) -> list:
        """Pairs ``(x, y)`` with ``x < y`` and nothing strictly between."""
        out = []
        for i, x in enumerate(self.elements):
            up = self.above[i]
            for j in range(len(self.elements)):
                if up >> j & 1 and not any(up >> k & 1 and self.above[k] >> j & 1
                                           for k in range(len(self.elements))):
                    out.append((x, self.elements[j]))
        return out

    def __len__(self):
        return len(self.elements)


def poset_from_relations(elements: Sequence[Hashable], pairs) -> FinitePoset:
    """Transitive closure of the given ``(x, y)`` meaning ``x < y`` relations."""
    elements = tuple(elements)
    index = {x: i for i, x in enumerate(elements)}
    m = len(elements)
    succ = [set() for _ in range(m)]
    for x, y in pairs:
        succ[index[x]].add(index[y])
    # depth-first search for a directed cycle, keeping the stack as witness
    state = [0] * m
    stack = []

    def visit(i):
        state[i] = 1
        stack.append(i)
        for j in sorted(succ[i]):
            if state[j] == 1:
                start = stack.index(j)
                raise PosetCycleError([elements[k] for k in stack[start:]] + [elements[j]])
            if state[j] == 0:
                visit(j)
        stack.pop()
        state[i] = 2

    for i in range(m):
        if state[i] == 0:
            visit(i)
    above = [0] * m
    for i in range(m):
        for j in succ[i]:
            above[i] |= 1 << j
    for k in range(m):  # Warshall
        for i in range(m):
            if above[i] >> k & 1:
                above[i] |= above[k]
    return FinitePoset(elements, tuple(above))


def chain(seq) -> FinitePoset:
    seq = tuple(seq)
    return poset_from_relations(seq, zip(seq, seq[1:]))


def poset_from_edge_orders(t: Hypertree, orders: Sequence[TotalOrder]) -> FinitePoset:
    """Union of per-edge total orders (``orders[j]`` on edge ``j``), closed transitively."""
    pairs = []
    for e, w in zip(t.edges, orders):
        if sorted(w.sequence) != list(e):
            raise ValueError(f"order {w.sequence} is not a total order on edge {e}")
        pairs.extend(zip(w.sequence, w.sequence[1:]))
    return poset_from_relations(range(t.n), pairs)


def linear_extensions(p: FinitePoset) -> Iterator[tuple]:
    """Order-preserving bijections onto ``1..m``.

    Each is a tuple aligned with ``p.elements`` giving the label of each
    element.
    """
    m = len(p)
    check_guard("linear_extensions", m)
    below = [0] * m
    for i in range(m):
        for j in range(m):
            if p.above[i] >> j & 1:
                below[j] |= 1 << i
    labels = [0] * m

    def rec(placed, k):
        if k > m:
            yield tuple(labels)
            return
        for i in range(m):
            if not placed >> i & 1 and below[i] & ~placed == 0:
                labels[i] = k
                yield from rec(placed | 1 << i, k + 1)

    return rec(0, 1)


def is_p_omega_partition(p: FinitePoset, w: TotalOrder, f: Mapping) -> bool:
    """Weak increase along covers that agree with ``w``, strict along those that don't."""
    for x, y in p.covers():
        if w.lt(x, y):
            if f[x] > f[y]:
                return False
        elif f[x] >= f[y]:
            return False
    return True


def _cell(labels: Sequence[int], strict_mask: int, maxcolor: int) -> Iterator[tuple]:
    """Colorings in ``A(pi, S)`` with colors at most ``maxcolor``.

    ``labels`` gives ``pi`` on element positions; yields colorings aligned
    with the same positions.
    """
    m = len(labels)
    order = inverse(labels)  # order[i] = position carrying label i+1
    col = [0] * m

    def rec(i, lo):
        if i == m:
            yield tuple(col)
            return
        start = lo + 1 if i > 0 and strict_mask >> (i - 1) & 1 else lo
        for c in range(max(start, 1), maxcolor + 1):
            col[order[i] - 1] = c
            yield from rec(i + 1, c)

    return rec(0, 1)


def fundamental_theorem_check(p: FinitePoset, w: TotalOrder, maxcolor: int) -> bool:
    """Exhaustive check that the (P, w)-partitions with colors in ``[maxcolor]``
    are exactly the disjoint union of the cells ``A(pi, Des(w o pi^-1))``."""
    m = len(p)
    check_guard("desk", m)
    check_guard("desk", maxcolor)
    wlab = tuple(w.rank[x] for x in p.elements)
    seen = {}
    for pi in linear_extensions(p):
        strict = descent_set([wlab[i - 1] for i in inverse(pi)])
        for col in _cell(pi, strict, maxcolor):
            if col in seen:
                return False
            seen[col] = pi
    for col in itertools.product(range(1, maxcolor + 1), repeat=m):
        f = dict(zip(p.elements, col))
        if is_p_omega_partition(p, w, f) != (col in seen):
            return False
    return True


def insertion(u: TotalOrder, v: TotalOrder) -> TotalOrder:
    """Replace the shared element of ``u`` by the whole of ``v``."""
    common = u.elements & v.elements
    if len(common) != 1:
        raise ValueError(f"orders must share exactly one element, found {len(common)}")
    (x,) = common
    i = u.sequence.index(x)
    return TotalOrder(u.sequence[:i] + v.sequence + u.sequence[i + 1:])


def fold_insertion(t: Hypertree, orders: Sequence[TotalOrder]) -> TotalOrder:
    """Left fold of :func:`insertion` along the hypertree's edge order."""
    seq = iter(t.edge_order)
    try:
        acc = orders[next(seq)]
    except StopIteration:
        return TotalOrder(tuple(range(t.n)))
    for j in seq:
        acc = insertion(acc, orders[j])
    return acc


def path_comparison_check(t: Hypertree, orders: Sequence[TotalOrder]) -> bool:
    """The folded order compares every pair through the lowest-ranked edge on their path."""
    w = fold_insertion(t, orders)
    for (x, y), (j, a, b) in t.pivots.items():
        if w.lt(x, y) != orders[j].lt(a, b):
            return False
    return True

