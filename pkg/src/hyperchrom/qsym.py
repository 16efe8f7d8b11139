"""Exact quasisymmetric and symmetric function expansions.

``QSymF`` keys are rank-subset bitmasks, ``QSymM`` keys are compositions,
``SymExpansion`` keys are partitions (weakly decreasing tuples).  All
coefficients are Python integers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, NamedTuple, Optional

from .combinatorics import check_subset, comp_of_subset, members, popcount, subset_of_comp

SYM_BASES = ("m", "p", "s")


class NotSymmetricError(ValueError):
    pass


def _clean(coeffs) -> dict:
    return {k: int(v) for k, v in coeffs.items() if v}


class _Expansion:
    degree: int
    coeffs: dict

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _clean(self.coeffs))
        for key in self.coeffs:
            self._check_key(key)

    def _check_key(self, key):
        raise NotImplementedError

    def sort_key(self, key):
        return key

    def terms(self) -> list:
        return [(k, self.coeffs[k]) for k in sorted(self.coeffs, key=self.sort_key)]

    def total(self) -> int:
        return sum(self.coeffs.values())

    def _combine(self, other, sign):
        if type(other) is not type(self) or other.degree != self.degree or other.basis != self.basis:
            return NotImplemented
        out = Counter(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] += sign * v
        return self._like(out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self._like({k: -v for k, v in self.coeffs.items()})

    def __bool__(self):
        return bool(self.coeffs)

    def index_of(self, key) -> list:
        return list(key)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "basis": self.basis,
            "terms": [{"index": self.index_of(k), "coeff": c} for k, c in self.terms()],
        }

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in self.terms():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            label = f"{self.basis}_{{{','.join(map(str, self.index_of(k)))}}}"
            parts.append(f"{sign} {mag if mag != 1 else ''}{label}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


@dataclass(frozen=True, eq=True)
class QSymF(_Expansion):
    degree: int
    coeffs: dict = field(default_factory=dict)
    basis = "F"

    def _check_key(self, key):
        check_subset(key, self.degree)

    def sort_key(self, key):
        return (popcount(key), members(key))

    def index_of(self, key):
        return list(members(key))

    def _like(self, coeffs):
        return QSymF(self.degree, coeffs)

    @classmethod
    def from_sets(cls, n: int, terms) -> "QSymF":
        from .combinatorics import to_mask

        out = Counter()
        for s, c in dict(terms).items():
            out[to_mask(s)] += c
        return cls(n, out)


@dataclass(frozen=True, eq=True)
class QSymM(_Expansion):
    degree: int
    coeffs: dict = field(default_factory=dict)
    basis = "M"

    def _check_key(self, key):
        if sum(key) != self.degree or any(p < 1 for p in key):
            raise ValueError(f"{key} is not a composition of {self.degree}")

    def _like(self, coeffs):
        return QSymM(self.degree, coeffs)


@dataclass(frozen=True, eq=True)
class SymExpansion(_Expansion):
    degree: int
    basis: str
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.basis not in SYM_BASES:
            raise ValueError(f"unknown symmetric basis {self.basis!r}")
        super().__post_init__()

    def _check_key(self, key):
        if sum(key) != self.degree or list(key) != sorted(key, reverse=True) or any(p < 1 for p in key):
            raise ValueError(f"{key} is not a partition of {self.degree}")

    def sort_key(self, key):
        return tuple(-p for p in key)

    def _like(self, coeffs):
        return SymExpansion(self.degree, self.basis, coeffs)


# -- partitions -----------------------------------------------------------

def partitions(n: int, largest: Optional[int] = None) -> Iterator[tuple]:
    """Partitions of ``n`` in reverse lexicographic order, ``(n)`` first."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def dominates(lam, mu) -> bool:
    """``lam >= mu`` in dominance order."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


# -- F <-> M --------------------------------------------------------------

def m_to_f(x: QSymM) -> QSymF:
    """Moebius inversion of ``F_S = sum_{T >= S} M_T`` over the subset lattice."""
    n = x.degree
    width = max(n - 1, 0)
    vals = [0] * (1 << width)
    for comp, c in x.coeffs.items():
        vals[subset_of_comp(comp)] += c
    for bit in range(width):
        step = 1 << bit
        for mask in range(1 << width):
            if mask & step:
                vals[mask] -= vals[mask ^ step]
    return QSymF(n, {m: v for m, v in enumerate(vals) if v})


def f_to_m(x: QSymF) -> QSymM:
    n = x.degree
    width = max(n - 1, 0)
    vals = [0] * (1 << width)
    for mask, c in x.coeffs.items():
        vals[mask] += c
    for bit in range(width):
        step = 1 << bit
        for mask in range(1 << width):
            if mask & step:
                vals[mask] += vals[mask ^ step]
    return QSymM(n, {comp_of_subset(m, n): v for m, v in enumerate(vals) if v})


# -- symmetric functions ----------------------------------------------------

def is_symmetric(x: QSymM) -> bool:
    shared = {}
    for comp in _all_compositions(x.degree):
        lam = tuple(sorted(comp, reverse=True))
        c = x.coeffs.get(comp, 0)
        if shared.setdefault(lam, c) != c:
            return False
    return True


@lru_cache(maxsize=None)
def _all_compositions(n: int) -> tuple:
    return tuple(comp_of_subset(m, n) for m in range(1 << max(n - 1, 0)))


def qsym_to_msym(x: QSymM) -> SymExpansion:
    if not is_symmetric(x):
        raise NotSymmetricError("quasisymmetric function is not symmetric")
    out = {}
    for comp, c in x.coeffs.items():
        out[tuple(sorted(comp, reverse=True))] = c
    return SymExpansion(x.degree, "m", out)


def msym_to_qsym(x: SymExpansion) -> QSymM:
    if x.basis != "m":
        raise ValueError("expected an m-basis expansion")
    out = {}
    for comp in _all_compositions(x.degree):
        c = x.coeffs.get(tuple(sorted(comp, reverse=True)), 0)
        if c:
            out[comp] = c
    return QSymM(x.degree, out)


@lru_cache(maxsize=None)
def power_sum_row(lam: tuple) -> dict:
    """Monomial coefficients of ``p_lam``.

    ``[m_mu] p_lam`` counts the ways to drop each part of ``lam`` into a
    part of ``mu`` so that every part of ``mu`` is filled exactly.
    """
    n = sum(lam)
    row = {}
    for mu in partitions(n):
        @lru_cache(maxsize=None)
        def fill(i, room):
            if i == len(lam):
                return 1
            total = 0
            for j, r in enumerate(room):
                if r >= lam[i]:
                    total += fill(i + 1, room[:j] + (r - lam[i],) + room[j + 1:])
            return total

        c = fill(0, mu)
        if c:
            row[mu] = c
    return row


def psym_to_msym(x: SymExpansion) -> SymExpansion:
    if x.basis != "p":
        raise ValueError("expected a p-basis expansion")
    out = Counter()
    for lam, c in x.coeffs.items():
        for mu, k in power_sum_row(lam).items():
            out[mu] += c * k
    return SymExpansion(x.degree, "m", out)


@lru_cache(maxsize=None)
def kostka(lam: tuple, mu: tuple) -> int:
    """Semistandard tableaux of shape ``lam`` and content ``mu``.

    Letters are placed one value at a time; each value occupies a
    horizontal strip, so we peel strips off the shape from the largest
    letter down.
    """
    lam, mu = tuple(lam), tuple(mu)
    if sum(lam) != sum(mu):
        raise ValueError(f"size mismatch: |{lam}| != |{mu}|")
    mu = tuple(p for p in mu if p)
    if not mu:
        return 1
    k = mu[-1]
    rest = mu[:-1]
    total = 0
    # remove a horizontal strip of size k from lam: row i loses r_i boxes
    # with lam[i] - r_i >= lam[i+1]
    rows = len(lam)

    def strips(i, left, acc):
        if i == rows:
            if left == 0:
                yield tuple(p for p in acc if p)
            return
        nxt = lam[i + 1] if i + 1 < rows else 0
        for r in range(min(left, lam[i] - nxt), -1, -1):
            yield from strips(i + 1, left - r, acc + (lam[i] - r,))

    for nu in strips(0, k, ()):
        total += kostka(nu, rest)
    return total


def ssym_to_msym(x: SymExpansion) -> SymExpansion:
    if x.basis != "s":
        raise ValueError("expected an s-basis expansion")
    out = Counter()
    for lam, c in x.coeffs.items():
        for mu in partitions(x.degree):
            k = kostka(lam, mu)
            if k:
                out[mu] += c * k
    return SymExpansion(x.degree, "m", out)


def msym_to_ssym(x: SymExpansion) -> SymExpansion:
    """Back-substitution through the unitriangular Kostka matrix."""
    if x.basis != "m":
        raise ValueError("expected an m-basis expansion")
    residual = Counter(x.coeffs)
    out = {}
    for lam in partitions(x.degree):  # reverse lex refines dominance
        b = residual.get(lam, 0)
        if b:
            out[lam] = b
            for mu in partitions(x.degree):
                if mu <= lam:
                    k = kostka(lam, mu)
                    if k:
                        residual[mu] -= b * k
    return SymExpansion(x.degree, "s", out)


# -- positivity -----------------------------------------------------------

class Verdict(NamedTuple):
    positive: bool
    witness: Optional[tuple] = None  # (key, coefficient)

    def describe(self, x=None) -> str:
        if self.positive:
            return "positive"
        key, c = self.witness
        label = x.index_of(key) if x is not None else key
        return f"negative coefficient {c} at {label}"


def positivity(x: _Expansion) -> Verdict:
    for k, c in x.terms():
        if c < 0:
            return Verdict(False, (k, c))
    return Verdict(True)


def from_json(data: dict):
    """Inverse of ``to_json`` for every basis."""
    from .combinatorics import to_mask

    n = data["degree"]
    basis = data["basis"]
    terms = data["terms"]
    if basis == "F":
        return QSymF(n, Counter({to_mask(t["index"]): t["coeff"] for t in terms}))
    if basis == "M":
        return QSymM(n, {tuple(t["index"]): t["coeff"] for t in terms})
    return SymExpansion(n, basis, {tuple(t["index"]): t["coeff"] for t in terms})
