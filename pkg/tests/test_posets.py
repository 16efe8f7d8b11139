import itertools
import random
from math import factorial

import pytest

from hyperchrom.combinatorics import descent_set, inverse
from hyperchrom.hypergraph import Hypergraph, Hypertree, random_hypertree
from hyperchrom.posets import (
    FinitePoset,
    PosetCycleError,
    TotalOrder,
    chain,
    fold_insertion,
    fundamental_theorem_check,
    insertion,
    is_p_omega_partition,
    linear_extensions,
    path_comparison_check,
    poset_from_edge_orders,
    poset_from_relations,
)


def two_triples():
    return Hypertree.build(Hypergraph.on_range(5, [[1, 2, 3], [3, 4, 5]]))


def test_poset_from_single_edge():
    t = Hypertree.build(Hypergraph.on_range(3, [[1, 2, 3]]))
    p = poset_from_edge_orders(t, [TotalOrder((0, 1, 2))])
    assert p.lt(0, 2) and p.lt(0, 1) and p.lt(1, 2) and not p.lt(2, 0)


def test_poset_from_two_chains():
    t = two_triples()
    p = poset_from_edge_orders(t, [TotalOrder((0, 1, 2)), TotalOrder((4, 3, 2))])
    assert set(p.relations()) == {(0, 1), (0, 2), (1, 2), (4, 3), (4, 2), (3, 2)}
    assert not p.lt(0, 4) and not p.lt(4, 0)


def test_poset_union_already_chain():
    t = two_triples()
    p = poset_from_edge_orders(t, [TotalOrder((0, 1, 2)), TotalOrder((2, 3, 4))])
    assert list(linear_extensions(p)) == [(1, 2, 3, 4, 5)]


def test_cycle_witness():
    with pytest.raises(PosetCycleError) as info:
        poset_from_relations("abc", [("a", "b"), ("b", "c"), ("c", "a")])
    w = info.value.witness
    assert w[0] == w[-1] and len(w) == 4


def test_linear_extension_counts():
    for n in range(1, 7):
        antichain = poset_from_relations(range(n), [])
        assert sum(1 for _ in linear_extensions(antichain)) == factorial(n)
        assert sum(1 for _ in linear_extensions(chain(range(n)))) == 1
    vee = poset_from_relations("abc", [("a", "c"), ("b", "c")])
    assert sorted(linear_extensions(vee)) == [(1, 2, 3), (2, 1, 3)]


def test_linear_extensions_are_order_preserving():
    p = poset_from_relations(range(5), [(0, 2), (1, 2), (2, 4), (3, 4)])
    exts = list(linear_extensions(p))
    assert len(set(exts)) == len(exts) == 8
    for f in exts:
        assert all(f[x] < f[y] for x, y in p.relations())


def test_is_p_omega_partition_examples():
    p = chain("ab")
    assert is_p_omega_partition(p, TotalOrder(("a", "b")), {"a": 1, "b": 1})
    assert not is_p_omega_partition(p, TotalOrder(("b", "a")), {"a": 1, "b": 1})
    assert is_p_omega_partition(p, TotalOrder(("b", "a")), {"a": 1, "b": 2})
    vee = poset_from_relations("abc", [("a", "c"), ("b", "c")])
    assert is_p_omega_partition(vee, TotalOrder(("a", "b", "c")), {"a": 3, "b": 3, "c": 3})


def test_fundamental_theorem_examples():
    assert fundamental_theorem_check(chain("abcd"), TotalOrder(("c", "a", "d", "b")), 4)
    anti = poset_from_relations("abc", [])
    for w in itertools.permutations("abc"):
        assert fundamental_theorem_check(anti, TotalOrder(w), 3)
    vee = poset_from_relations("abc", [("a", "c"), ("b", "c")])
    for w in itertools.permutations("abc"):
        assert fundamental_theorem_check(vee, TotalOrder(w), 4)


def test_insertion_shared_middle():
    u = TotalOrder(("x", "b", "y"))
    v = TotalOrder(("a", "b", "c"))
    assert insertion(u, v).sequence == ("x", "a", "b", "c", "y")


def test_insertion_degenerate():
    u = TotalOrder(("p", "x", "q"))
    assert insertion(u, TotalOrder(("x",))) == u
    v = TotalOrder(("a", "x", "c"))
    assert insertion(TotalOrder(("x",)), v) == v
    with pytest.raises(ValueError):
        insertion(TotalOrder(("a", "b")), TotalOrder(("a", "b", "c")))
    with pytest.raises(ValueError):
        insertion(TotalOrder(("a",)), TotalOrder(("b",)))


def test_fold_two_chains():
    t = two_triples()
    w = fold_insertion(t, [TotalOrder((0, 2, 1)), TotalOrder((3, 2, 4))])
    assert w.sequence == (0, 3, 2, 4, 1)


def random_orders(t, rng):
    orders = []
    for e in t.edges:
        seq = list(e)
        rng.shuffle(seq)
        orders.append(TotalOrder(tuple(seq)))
    return orders


def test_fold_restricts_and_extends():
    rng = random.Random(3)
    for seed in range(40):
        t = random_hypertree(rng.randint(2, 9), [2, 3, 4, 5], seed)
        orders = random_orders(t, rng)
        w = fold_insertion(t, orders)
        for j, e in enumerate(t.edges):
            assert w.restrict(e) == orders[j]
        p = poset_from_edge_orders(t, orders)
        assert all(w.lt(x, y) for x, y in p.relations())


def test_path_comparison_small():
    t = Hypertree.build(Hypergraph.on_range(3, [[1, 2, 3]]))
    assert path_comparison_check(t, [TotalOrder((2, 0, 1))])
    rng = random.Random(11)
    t = random_hypertree(7, [3], 4)
    assert len(t.edges) == 3
    for _ in range(20):
        assert path_comparison_check(t, random_orders(t, rng))


def test_path_comparison_alternate_edge_order():
    t = two_triples()
    reordered = Hypertree(t.base, (1, 0), t.cycles)
    orders = [TotalOrder((1, 2, 0)), TotalOrder((3, 2, 4))]
    assert fold_insertion(t, orders).sequence == (1, 3, 2, 4, 0)
    assert fold_insertion(reordered, orders).sequence == (3, 1, 2, 0, 4)
    assert path_comparison_check(t, orders)
    assert path_comparison_check(reordered, orders)
