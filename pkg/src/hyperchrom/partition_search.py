"""Partitions of the nonconstant colorings of an n-set into F-cells.

A coloring of ``[n]`` is determined, as far as membership in the cells
``A(pi, S)`` goes, by its ordered set partition into color classes (a face
of the Coxeter complex).  The coloring lies in ``A(pi, S)`` exactly when
``pi`` lists the classes contiguously in color order and ``S`` is inside
the face's boundary set ``D``.  An assignment ``pi -> S(pi)`` therefore
partitions the nonconstant colorings iff every face with at least two
blocks is hit exactly once and the one-block face is never hit.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Optional

from . import combinatorics as cb
from .chromatic import conjugate, standard_cycle


class AssignmentError(ValueError):
    pass


@dataclass(frozen=True)
class Face:
    blocks: tuple  # tuple of frozensets of 1..n

    @property
    def boundary(self) -> int:
        return cb.boundary_set(self.blocks)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)


def faces(n: int) -> list:
    """Ordered set partitions of ``[n]`` with at least two blocks."""
    return [Face(o) for o in cb.enumerate_ordered_set_partitions(range(1, n + 1)) if len(o) >= 2]


def compatible_facets(f: Face) -> list:
    """One-line permutations ``pi`` whose vertex order ``pi^-1`` lists the blocks in turn."""
    out = []
    for orders in itertools.product(*(itertools.permutations(sorted(b)) for b in f.blocks)):
        seq = [v for part in orders for v in part]
        out.append(cb.inverse(seq))
    return sorted(out)


@dataclass
class PartitionAssignment:
    n: int
    table: dict  # one-line permutation tuple -> rank mask

    def __eq__(self, other):
        return isinstance(other, PartitionAssignment) and self.n == other.n and self.table == other.table

    def to_json(self) -> dict:
        return {"n": self.n, "table": [{"perm": list(p), "S": list(cb.members(self.table[p]))}
                                       for p in sorted(self.table)]}

    @classmethod
    def from_json(cls, data: dict) -> "PartitionAssignment":
        n = int(data["n"])
        table = {}
        for row in data["table"]:
            p = tuple(int(v) for v in row["perm"])
            if p in table:
                raise AssignmentError(f"permutation {list(p)} listed twice")
            table[p] = cb.to_mask(int(s) for s in row["S"])
        return cls(n, table)


def cyclic_assignment(n: int, c=None) -> PartitionAssignment:
    """``S(pi) = Des(pi c pi^-1)``, valid when ``n`` is prime."""
    c = tuple(c) if c is not None else standard_cycle(n)
    return PartitionAssignment(n, {pi: cb.descent_set(conjugate(pi, c))
                                   for pi in cb.enumerate_permutations(n)})


def _face_key(blocks) -> tuple:
    return tuple(frozenset(b) for b in blocks)


def _cut(seq, mask) -> tuple:
    blocks, cur = [], []
    for i, v in enumerate(seq, start=1):
        cur.append(v)
        if mask >> (i - 1) & 1:
            blocks.append(frozenset(cur))
            cur = []
    blocks.append(frozenset(cur))
    return tuple(blocks)


def covered_faces(pi, s: int, n: int):
    """Faces ``(pi, D)`` with ``S`` inside ``D``; ``D = 0`` is the constant face."""
    seq = cb.inverse(pi)
    free = ((1 << (n - 1)) - 1) & ~s
    sub = free
    while True:
        yield _cut(seq, s | sub)
        if sub == 0:
            break
        sub = (sub - 1) & free


def verify_assignment(a: PartitionAssignment) -> bool:
    n = a.n
    perms = list(cb.enumerate_permutations(n))
    if set(a.table) != set(perms):
        return False
    if any(not 0 < s < 1 << (n - 1) for s in a.table.values()):
        return False  # S empty would cover the constant colorings
    # cheap necessary condition: cell sizes add up to the number of faces
    if sum(1 << (n - 1 - cb.popcount(s)) for s in a.table.values()) != cb.fubini(n) - 1:
        return False
    hits = {}
    for pi, s in a.table.items():
        for key in covered_faces(pi, s, n):
            if key in hits:
                return False
            hits[key] = pi
    return len(hits) == cb.fubini(n) - 1


@dataclass
class SearchResult:
    status: str  # "found", "exhausted" or "budget"
    assignment: Optional[PartitionAssignment]
    nodes: int

    def to_json(self) -> dict:
        return {"status": self.status, "nodes": self.nodes,
                "assignment": self.assignment.to_json() if self.assignment else None}


def _candidate_masks(n: int) -> list:
    """Nonempty subsets of ``[n-1]`` by popcount, then value."""
    return sorted(range(1, 1 << (n - 1)), key=lambda m: (cb.popcount(m), m))


def search_assignment(n: int, budget: Optional[int] = None) -> SearchResult:
    """Exact-cover search for a valid assignment.

    Columns are faces, rows are candidates ``(pi, S)`` with ``S`` nonempty,
    each covering the faces it contains (Algorithm X on dict-of-sets).
    Every candidate of ``pi`` covers the all-singletons face listed by
    ``pi``, so exactly one ``S`` gets picked per permutation.  The face with
    the fewest live candidates is branched on first.  ``budget`` bounds the number of
    search nodes; running out is reported as ``"budget"``, not as
    nonexistence.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    cb.check_guard("search", n)
    face_list = faces(n)
    index = {f.blocks: i for i, f in enumerate(face_list)}
    cands = []  # (pi, s)
    rows = []  # faces covered by each candidate
    cols = {i: set() for i in range(len(face_list))}
    for pi in cb.enumerate_permutations(n):
        for s in _candidate_masks(n):
            cid = len(cands)
            cands.append((pi, s))
            row = [index[key] for key in covered_faces(pi, s, n) if key in index]
            rows.append(row)
            for i in row:
                cols[i].add(cid)

    nodes = 0
    chosen = []

    class _Budget(Exception):
        pass

    def select(r):
        removed = []
        for i in rows[r]:
            for other in cols[i]:
                for k in rows[other]:
                    if k != i:
                        cols[k].discard(other)
            removed.append(cols.pop(i))
        return removed

    def deselect(r, removed):
        for i in reversed(rows[r]):
            cols[i] = removed.pop()
            for other in cols[i]:
                for k in rows[other]:
                    if k != i:
                        cols[k].add(other)

    def solve():
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise _Budget
        if not cols:
            return True
        col = min(cols, key=lambda i: len(cols[i]))
        for r in sorted(cols[col]):
            chosen.append(r)
            removed = select(r)
            if solve():
                return True
            deselect(r, removed)
            chosen.pop()
        return False

    try:
        ok = solve()
    except _Budget:
        return SearchResult("budget", None, nodes - 1)
    if not ok:
        return SearchResult("exhausted", None, nodes)
    a = PartitionAssignment(n, {cands[r][0]: cands[r][1] for r in chosen})
    if not verify_assignment(a):
        raise AssertionError("search produced an invalid assignment")
    return SearchResult("found", a, nodes)


def export_assignment(a: PartitionAssignment, path) -> None:
    with open(path, "w") as fh:
        json.dump(a.to_json(), fh, indent=1)
        fh.write("\n")


def import_assignment(path) -> PartitionAssignment:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise AssignmentError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    a = PartitionAssignment.from_json(data)
    if not verify_assignment(a):
        raise AssignmentError(f"{path}: table does not partition the nonconstant colorings of [{a.n}]")
    return a
