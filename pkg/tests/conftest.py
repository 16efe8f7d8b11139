import itertools
from collections import Counter

import pytest

from hyperchrom.hypergraph import Hypergraph


def brute_force_m(h: Hypergraph) -> dict:
    """M-coefficients of X_H read off proper colorings over the alphabet [n].

    With n colors every composition of n appears as the exponent vector of
    some monomial ``x_1^a1 ... x_k^ak``, which is what we record.
    """
    n = h.n
    out = Counter()
    for word in itertools.product(range(1, n + 1), repeat=n):
        if any(len({word[v] for v in e}) == 1 for e in h.edges):
            continue
        used = sorted(set(word))
        if used != list(range(1, len(used) + 1)):
            continue
        out[tuple(word.count(c) for c in used)] += 1
    return dict(out)


def brute_force_f(h: Hypergraph) -> dict:
    """F-coefficients from the brute-force M-coefficients by explicit Moebius sums."""
    n = h.n
    m = brute_force_m(h)
    ranks = range(1, n)

    def comp(subset):
        cuts = [0] + sorted(subset) + [n]
        return tuple(b - a for a, b in zip(cuts, cuts[1:]))

    out = {}
    for k in range(n):
        for s in itertools.combinations(ranks, k):
            total = 0
            for j in range(len(s) + 1):
                for t in itertools.combinations(s, j):
                    total += (-1) ** (len(s) - j) * m.get(comp(t), 0)
            if total:
                out[frozenset(s)] = total
    return out


@pytest.fixture
def two_triples_hypergraph():
    return Hypergraph.on_range(4, [[1, 2, 3], [2, 3, 4]])


@pytest.fixture
def counterexample():
    return Hypergraph.on_range(5, [[1, 2, 3], [1, 4], [2, 4], [3, 4, 5]])
