"""Chromatic symmetric functions of hypergraphs.

Two independent oracles (ordered set partitions and inclusion-exclusion
over edge subsets) and the permutation-indexed F-expansions for
hypertrees: the H-descent formula, the insertion-order formula it is
derived from, and the generalized version driven by partition
assignments for arbitrary edge sizes.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Optional, Sequence

import numpy as np

from . import combinatorics as cb
from .combinatorics import check_guard, descent_set, inverse, members
from .hypergraph import Hypergraph, Hypertree, classify, linear_interval_hypergraphs
from .posets import TotalOrder, fold_insertion
from .qsym import (
    QSymF,
    QSymM,
    SymExpansion,
    Verdict,
    is_symmetric,
    m_to_f,
    msym_to_qsym,
    msym_to_ssym,
    positivity,
    psym_to_msym,
    qsym_to_msym,
)


class RouteError(ValueError):
    """An expansion route does not apply to the given input."""


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _base(h) -> Hypergraph:
    return h.base if isinstance(h, Hypertree) else h


def _edge_masks(h: Hypergraph) -> list:
    return [sum(1 << v for v in e) for e in h.edges]


# -- oracles --------------------------------------------------------------

def oracle_m_expansion(h, method: str = "dp") -> QSymM:
    """M-expansion of X_H.

    ``[M_alpha] X_H`` is the number of ordered set partitions of V with
    block sizes ``alpha`` such that no edge sits inside a single block.
    ``method="enumerate"`` walks every ordered set partition; the default
    ``"dp"`` counts the same objects block by block over vertex bitmasks.
    """
    h = _base(h)
    n = h.n
    check_guard("oracle", n)
    if n == 0:
        raise ValueError("empty vertex set")
    if method == "enumerate":
        masks = _edge_masks(h)
        out = Counter()
        for osp in cb.enumerate_ordered_set_partitions(range(n)):
            blocks = [sum(1 << v for v in b) for b in osp]
            if all(e & b != e for e in masks for b in blocks):
                out[tuple(len(b) for b in osp)] += 1
        return QSymM(n, out)
    if method != "dp":
        raise ValueError(f"unknown method {method!r}")

    size = 1 << n
    idx = np.arange(size, dtype=np.int64)
    independent = np.ones(size, dtype=bool)
    for e in _edge_masks(h):
        independent[(idx & e) == e] = False
    pop = np.array([bin(m).count("1") for m in range(size)])
    blocks_of = [idx[(pop == a) & independent] for a in range(n + 1)]
    level = [idx[pop == k] for k in range(n + 1)]
    full = size - 1
    out = {}

    def extend(vec, total, parts):
        base = level[total]
        weights = vec[base]
        for a in range(1, n - total + 1):
            new = np.zeros(size, dtype=np.int64)
            for d in blocks_of[a]:
                free = (base & d) == 0
                new[base[free] | d] += weights[free]
            if total + a == n:
                if new[full]:
                    out[parts + (a,)] = int(new[full])
            elif new.any():
                extend(new, total + a, parts + (a,))

    start = np.zeros(size, dtype=np.int64)
    start[0] = 1
    extend(start, 0, ())
    return QSymM(n, out)


def _components(n: int, edges) -> tuple:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        r = find(e[0])
        for v in e[1:]:
            s = find(v)
            if s != r:
                parent[s] = r
    sizes = Counter(find(v) for v in range(n))
    return tuple(sorted(sizes.values(), reverse=True))


def oracle_p_expansion(h) -> SymExpansion:
    """Inclusion-exclusion over the set of edges forced monochromatic."""
    h = _base(h)
    check_guard("edge_subsets", len(h.edges))
    out = Counter()
    for r in range(len(h.edges) + 1):
        sign = -1 if r % 2 else 1
        for sub in itertools.combinations(h.edges, r):
            out[_components(h.n, sub)] += sign
    return SymExpansion(h.n, "p", out)


def oracle_f_expansion(h) -> QSymF:
    return m_to_f(oracle_m_expansion(h))


def psum_f_expansion(h) -> QSymF:
    return m_to_f(msym_to_qsym(psym_to_msym(oracle_p_expansion(h))))


# -- single edge ------------------------------------------------------------

def cstd(w: Sequence[int]) -> tuple:
    """Cyclic standardization: ``pi(i)`` is the rank of the ``i``-th rotation."""
    w = tuple(w)
    n = len(w)
    if not is_prime(n):
        raise ValueError(f"word length {n} is not prime; rotations may coincide")
    if len(set(w)) < 2:
        raise ValueError("constant word has no cyclic standardization")
    rotations = [w[i:] + w[:i] for i in range(n)]
    order = sorted(range(n), key=rotations.__getitem__)
    pi = [0] * n
    for rank, i in enumerate(order, start=1):
        pi[i] = rank
    return tuple(pi)


def in_A(pi: Sequence[int], s: int, chi: Sequence[int]) -> bool:
    """``chi`` (aligned with the positions of ``pi``) lies in ``A(pi, S)``."""
    seq = [chi[v - 1] for v in inverse(pi)]
    for i in range(len(seq) - 1):
        if seq[i] > seq[i + 1]:
            return False
        if s >> i & 1 and seq[i] == seq[i + 1]:
            return False
    return True


def standard_cycle(n: int) -> tuple:
    """One-line form of ``i -> i + 1``, ``n -> 1``."""
    return tuple(range(2, n + 1)) + (1,)


def conjugate(pi, c) -> tuple:
    """``pi o c o pi^-1``."""
    return cb.compose(pi, cb.compose(c, inverse(pi)))


def _check_cycle(c, n):
    if sorted(c) != list(range(1, n + 1)):
        raise ValueError("cycle must be a permutation of [n]")
    x, steps = 1, 0
    while True:
        x = c[x - 1]
        steps += 1
        if x == 1:
            break
    if steps != n:
        raise ValueError("permutation is not a single n-cycle")


def single_edge_f_expansion(n: int, c: Optional[Sequence[int]] = None) -> QSymF:
    """``sum_pi F_{Des(pi c pi^-1)}`` over all of S_n."""
    if not is_prime(n):
        raise ValueError(f"edge size {n} is not prime")
    c = tuple(c) if c is not None else standard_cycle(n)
    _check_cycle(c, n)
    out = Counter(descent_set(conjugate(pi, c)) for pi in cb.enumerate_permutations(n))
    return QSymF(n, out)


def conjugate_multiplicities(n: int, c: Optional[Sequence[int]] = None) -> Counter:
    """How often each n-cycle arises as ``pi c pi^-1``."""
    c = tuple(c) if c is not None else standard_cycle(n)
    return Counter(conjugate(pi, c) for pi in cb.enumerate_permutations(n))


def verify_single_edge_partition(n: int, maxcolor: Optional[int] = None, c=None) -> bool:
    """Every nonconstant word over ``[maxcolor]`` lies in exactly one cell
    ``A(pi, Des(pi c pi^-1))``, namely the one with ``pi = cstd(w)``.

    Each word is checked against its own cstd cell; exclusivity follows by
    counting, since the cell sizes over a bounded alphabet are binomial
    coefficients that must add up to the number of nonconstant words.
    """
    if not is_prime(n):
        raise ValueError(f"{n} is not prime")
    if maxcolor is None:
        maxcolor = n
    check_guard("permutations", n)
    c = tuple(c) if c is not None else standard_cycle(n)
    _check_cycle(c, n)
    if c != standard_cycle(n):
        # relabel positions so that c becomes i -> i+1
        raise NotImplementedError("only the standard cycle is supported for word checks")
    cells = {pi: descent_set(conjugate(pi, c)) for pi in cb.enumerate_permutations(n)}
    total = sum(_binom_cell(n, maxcolor, cb.popcount(s)) for s in cells.values())
    nonconstant = maxcolor ** n - maxcolor
    if total != nonconstant:
        return False
    for w in itertools.product(range(1, maxcolor + 1), repeat=n):
        if w.count(w[0]) == n:
            continue
        pi = cstd(w)
        if not in_A(pi, cells[pi], w):
            return False
    return True


def _binom_cell(n: int, maxcolor: int, strict: int) -> int:
    """Weakly increasing words of length n over [maxcolor] with ``strict`` forced rises."""
    from math import comb

    return comb(maxcolor - strict + n - 1, n) if maxcolor - strict >= 1 else 0


# -- hypertrees ---------------------------------------------------------------

def h_descents(t: Hypertree, pi: Sequence[int]) -> int:
    """H-descent set of the labeling ``pi`` (``pi[v]`` is the label of vertex ``v``)."""
    sigma = inverse(pi)
    out = 0
    for i in range(1, t.n):
        x, y = sigma[i - 1] - 1, sigma[i] - 1
        j, a, b = t.pivots[x, y]
        if pi[t.cyc(j, a)] > pi[t.cyc(j, b)]:
            out |= 1 << (i - 1)
    return out


def _require_prime_edges(t):
    if not isinstance(t, Hypertree):
        raise RouteError("route requires a hypertree: " + classify(t).describe())
    bad = [len(e) for e in t.edges if not is_prime(len(e))]
    if bad:
        raise RouteError(f"route requires prime edge sizes, found {sorted(set(bad))}")


@lru_cache(maxsize=4)
def _perm_rows(n: int) -> np.ndarray:
    """All vertex sequences of ``range(n)``, one per row."""
    return np.array(list(itertools.permutations(range(n))), dtype=np.int8).reshape(-1, n)


def _labelling_chunks(n: int):
    """Yield (sequence, position) arrays covering every labeling of ``n`` vertices."""
    if n <= 9:
        seqs = _perm_rows(n).astype(np.int64)
        yield seqs, np.argsort(seqs, axis=1)
        return
    sub = _perm_rows(n - 1).astype(np.int64)
    for first in range(n):
        rest = np.array([v for v in range(n) if v != first], dtype=np.int64)
        seqs = np.empty((sub.shape[0], n), dtype=np.int64)
        seqs[:, 0] = first
        seqs[:, 1:] = rest[sub]
        yield seqs, np.argsort(seqs, axis=1)


def theorem_f_expansion(t: Hypertree) -> QSymF:
    """``sum_pi F_{Des_H(pi)}`` over every labeling of the vertices.

    Vectorized over all labelings: for each consecutive label pair the
    comparison vertices ``c_j(v_r), c_j(v_{r+1})`` depend only on the
    vertex pair, so they are tabulated once.
    """
    _require_prime_edges(t)
    n = t.n
    check_guard("oracle", n)
    if n == 1:
        return QSymF(1, {0: 1})
    lo = np.zeros((n, n), dtype=np.int64)
    hi = np.zeros((n, n), dtype=np.int64)
    for (x, y), (j, a, b) in t.pivots.items():
        lo[x, y] = t.cyc(j, a)
        hi[x, y] = t.cyc(j, b)
    counts = np.zeros(1 << (n - 1), dtype=np.int64)
    for seqs, pos in _labelling_chunks(n):
        rows = np.arange(seqs.shape[0])
        mask = np.zeros(seqs.shape[0], dtype=np.int64)
        for i in range(n - 1):
            x, y = seqs[:, i], seqs[:, i + 1]
            d = pos[rows, lo[x, y]] > pos[rows, hi[x, y]]
            mask |= d.astype(np.int64) << i
        counts += np.bincount(mask, minlength=1 << (n - 1))
    return QSymF(n, {m: int(c) for m, c in enumerate(counts) if c})


def theorem_f_expansion_slow(t: Hypertree) -> QSymF:
    """Reference loop over labelings using :func:`h_descents` directly."""
    _require_prime_edges(t)
    return QSymF(t.n, Counter(h_descents(t, pi) for pi in cb.enumerate_permutations(t.n)))


def _omega_descents(t: Hypertree, pi, orders) -> int:
    w = fold_insertion(t, orders)
    return descent_set([w.rank[v - 1] for v in inverse(pi)])


def insertion_orders(t: Hypertree, pi) -> list:
    """Per edge, ``x < y`` iff ``pi(c(x)) < pi(c(y))``."""
    return [TotalOrder(tuple(sorted(e, key=lambda x, j=j: pi[t.cyc(j, x)])))
            for j, e in enumerate(t.edges)]


def corollary_descents(t: Hypertree, pi) -> int:
    """``Des(omega_pi o pi^-1)`` for the folded insertion order ``omega_pi``."""
    return _omega_descents(t, pi, insertion_orders(t, pi))


def corollary_f_expansion(t: Hypertree) -> QSymF:
    _require_prime_edges(t)
    check_guard("oracle", t.n)
    return QSymF(t.n, Counter(corollary_descents(t, pi) for pi in cb.enumerate_permutations(t.n)))


def _cycle_rule(t: Hypertree, j: int, local) -> int:
    """``Des(pi_j c_j pi_j^-1)`` for the standardized restriction ``local``."""
    e = t.edges[j]
    lab = dict(zip(e, local))
    who = {v: k for k, v in lab.items()}
    conj = [lab[t.cyc(j, who[i])] for i in range(1, len(e) + 1)]
    return descent_set(conj)


def generalized_descents(t: Hypertree, pi, assignments: Mapping) -> int:
    """F-index contributed by ``pi`` when edge cells come from ``assignments``.

    ``assignments`` maps an edge size to a table (``perm -> rank mask``) or
    an object with a ``table`` attribute; the table is read through the
    ascending-index identification of the edge with ``[m]``.  Prime sizes
    without an entry use the edge's cycle.
    """
    orders = []
    for j, e in enumerate(t.edges):
        m = len(e)
        local = cb.standardize([pi[v] for v in e])
        a = assignments.get(m)
        if a is not None:
            table = getattr(a, "table", a)
            s = table[local]
        elif is_prime(m):
            s = _cycle_rule(t, j, local)
        else:
            raise RouteError(f"no partition assignment for edge size {m}")
        tau = cb.min_permutation_with_descents(s, m)
        key = {v: tau[r - 1] for v, r in zip(e, local)}
        orders.append(TotalOrder(tuple(sorted(e, key=key.__getitem__))))
    return _omega_descents(t, pi, orders)


def generalized_f_expansion(t: Hypertree, assignments: Optional[Mapping] = None) -> QSymF:
    if not isinstance(t, Hypertree):
        raise RouteError("route requires a hypertree: " + classify(t).describe())
    assignments = dict(assignments or {})
    missing = sorted({len(e) for e in t.edges if len(e) not in assignments and not is_prime(len(e))})
    if missing:
        raise RouteError(f"no partition assignment for edge sizes {missing}")
    check_guard("oracle", t.n)
    return QSymF(t.n, Counter(generalized_descents(t, pi, assignments)
                              for pi in cb.enumerate_permutations(t.n)))


# -- verification -------------------------------------------------------------

ROUTES = ("oracle", "psum", "theorem", "corollary", "generalized")


@dataclass
class VerifyReport:
    degree: int
    classification: dict
    expansions: dict = field(default_factory=dict)  # route -> QSymF
    skipped: dict = field(default_factory=dict)  # route -> reason
    discrepancy: Optional[dict] = None
    symmetric: bool = True
    f_positivity: Optional[Verdict] = None

    @property
    def agree(self) -> bool:
        return self.discrepancy is None and self.symmetric

    def to_json(self) -> dict:
        ref = self.expansions.get("oracle")
        pos = None
        if self.f_positivity is not None:
            pos = {"positive": self.f_positivity.positive}
            if not self.f_positivity.positive:
                key, c = self.f_positivity.witness
                pos["witness"] = {"index": list(members(key)), "coeff": c}
        return {
            "degree": self.degree,
            "classification": self.classification,
            "routes": sorted(self.expansions),
            "skipped": dict(sorted(self.skipped.items())),
            "agree": self.agree,
            "symmetric": self.symmetric,
            "discrepancy": self.discrepancy,
            "f_positivity": pos,
            "expansion": ref.to_json() if ref is not None else None,
        }


def _first_difference(a: QSymF, b: QSymF):
    keys = sorted(set(a.coeffs) | set(b.coeffs), key=a.sort_key)
    for k in keys:
        if a.coeffs.get(k, 0) != b.coeffs.get(k, 0):
            return k
    return None


def verify(h, routes: Sequence[str] = ROUTES, assignments: Optional[Mapping] = None) -> VerifyReport:
    """Compute each requested route and compare it against the M-oracle."""
    base = _base(h)
    cls = classify(base)
    report = VerifyReport(base.n, {"connected": cls.connected, "linear": cls.linear,
                                   "hypertree": cls.hypertree})
    t = h
    if not isinstance(h, Hypertree) and cls.hypertree:
        t = Hypertree.build(base)
    m = oracle_m_expansion(base)
    report.symmetric = is_symmetric(m)
    ref = m_to_f(m)
    report.expansions["oracle"] = ref
    report.f_positivity = positivity(ref)
    builders = {
        "psum": lambda: psum_f_expansion(base),
        "theorem": lambda: theorem_f_expansion(t),
        "corollary": lambda: corollary_f_expansion(t),
        "generalized": lambda: generalized_f_expansion(t, assignments),
    }
    for route in routes:
        if route == "oracle":
            continue
        try:
            report.expansions[route] = builders[route]()
        except RouteError as exc:
            report.skipped[route] = str(exc)
    for route in routes:
        got = report.expansions.get(route)
        if got is None or route == "oracle":
            continue
        k = _first_difference(ref, got)
        if k is not None:
            report.discrepancy = {"route": route, "index": list(members(k)),
                                  "oracle": ref.coeffs.get(k, 0), "route_value": got.coeffs.get(k, 0)}
            break
    return report


# -- Schur positivity scan -------------------------------------------------

def schur_expansion(h) -> SymExpansion:
    return msym_to_ssym(psym_to_msym(oracle_p_expansion(h)))


def schur_scan(max_n: int, min_n: int = 2) -> list:
    """Schur-positivity verdicts for all connected linear interval hypergraphs."""
    out = []
    for n in range(min_n, max_n + 1):
        for h in linear_interval_hypergraphs(n):
            s = schur_expansion(h)
            out.append((h, s, positivity(s)))
    return out


def m_symmetric(h) -> SymExpansion:
    """X_H in the monomial symmetric basis via the M-oracle."""
    return qsym_to_msym(oracle_m_expansion(h))
