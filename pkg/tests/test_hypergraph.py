import itertools
import random

import pytest

from hyperchrom.hypergraph import (
    Hypergraph,
    HypergraphError,
    Hypertree,
    classify,
    default_cycles,
    enumerate_hypertrees,
    hypertree_canonical_form,
    leaf_edge_ordering,
    linear_interval_hypergraphs,
    parse_hypergraph,
    random_hypertree,
    unique_path,
    verify_ordering,
)


def test_classify_examples(two_triples_hypergraph):
    c = classify(two_triples_hypergraph)
    assert (c.connected, c.linear, c.hypertree) == (True, False, False)
    c = classify(Hypergraph.on_range(5, [[1, 2, 3], [3, 4, 5]]))
    assert (c.connected, c.linear, c.hypertree) == (True, True, True)
    assert not classify(Hypergraph.on_range(4, [[1, 2], [3, 4]])).connected


def test_counterexample_is_linear_not_tree(counterexample):
    c = classify(counterexample)
    assert c.connected and c.linear and not c.hypertree


def test_graph_cycle_is_not_hypertree():
    assert not classify(Hypergraph.on_range(3, [[1, 2], [2, 3], [1, 3]])).hypertree


@pytest.mark.parametrize("edges", [[[1]], [[1, 1]], [[1, 2], [2, 1]], [[1, 9]]])
def test_malformed_edges_rejected(edges):
    with pytest.raises(HypergraphError):
        Hypergraph.on_range(3, edges)


def test_leaf_edge_ordering_examples():
    single = Hypergraph.on_range(3, [[1, 2, 3]])
    assert leaf_edge_ordering(single) == (0,)
    star = Hypergraph.on_range(7, [[1, 2, 3], [1, 4, 5], [1, 6, 7]])
    assert leaf_edge_ordering(star) == (0, 1, 2)
    assert all(verify_ordering(star, o) for o in itertools.permutations(range(3)))
    path = Hypergraph.on_range(7, [[1, 2, 3], [5, 6, 7], [3, 4, 5]])
    order = leaf_edge_ordering(path)
    assert verify_ordering(path, order)
    assert not verify_ordering(path, (0, 1, 2))


def test_leaf_edge_ordering_refuses_non_tree(two_triples_hypergraph):
    with pytest.raises(HypergraphError):
        leaf_edge_ordering(two_triples_hypergraph)


def test_verify_ordering_failures(two_triples_hypergraph):
    disjoint = Hypergraph.on_range(4, [[1, 2], [3, 4]])
    assert not verify_ordering(disjoint, (0, 1))
    assert not verify_ordering(disjoint, (1, 0))
    assert not verify_ordering(two_triples_hypergraph, (0, 1))


def _small_hypergraphs(n):
    subsets = [c for k in range(2, n + 1) for c in itertools.combinations(range(1, n + 1), k)]
    rng = random.Random(n)
    for _ in range(300):
        k = rng.randint(1, 4)
        yield Hypergraph.on_range(n, rng.sample(subsets, min(k, len(subsets))))


def test_ordering_characterizes_hypertrees():
    # converse direction: any hypergraph with a valid ordering covering V is a hypertree
    for n in range(2, 7):
        for h in _small_hypergraphs(n):
            has_order = any(verify_ordering(h, o) and set().union(*h.edges) == set(range(n))
                            for o in itertools.permutations(range(len(h.edges))))
            assert has_order == classify(h).hypertree, h


def test_classify_relabel_invariant():
    rng = random.Random(7)
    for n in range(2, 7):
        for h in _small_hypergraphs(n):
            perm = list(range(1, n + 1))
            rng.shuffle(perm)
            g = Hypergraph.on_range(n, [[perm[v - 1] for v in e] for e in h.labelled_edges()])
            assert classify(g) == classify(h)


def test_default_cycles():
    h = Hypergraph.from_labels(range(1, 11), [[1, 2, 3], [4, 10, 7], [5, 6]])
    cyc = default_cycles(h)
    assert [h.edge_labels(c) for c in cyc] == [[1, 2, 3], [4, 7, 10], [5, 6]]
    t = Hypertree.build(Hypergraph.on_range(5, [[1, 2, 3], [3, 4, 5]]))
    assert t.cyc(0, 0) == 1 and t.cyc(0, 2) == 0


def test_unique_path_examples():
    t = Hypertree.build(Hypergraph.on_range(5, [[1, 2, 3], [3, 4, 5]]))
    p = unique_path(t, 0, 1)
    assert p.vertices == (0, 1) and p.edges == (0,)
    p = unique_path(t, 0, 4)
    assert p.vertices == (0, 2, 4) and p.edges == (0, 1)
    with pytest.raises(HypergraphError):
        unique_path(t, 2, 2)


def _all_paths(h, x, y):
    """Exhaustive search for vertex/edge-distinct paths from x to y."""
    found = []

    def walk(v, verts, edges):
        if v == y:
            found.append((tuple(verts), tuple(edges)))
            return
        for j, e in enumerate(h.edges):
            if j in edges or v not in e:
                continue
            for u in e:
                if u != v and u not in verts:
                    walk(u, verts + [u], edges + [j])

    walk(x, [x], [])
    return found


def test_paths_are_unique():
    for seed in range(20):
        t = random_hypertree(random.Random(seed).randint(2, 8), [2, 3, 5], seed)
        for x in range(t.n):
            for y in range(t.n):
                if x != y:
                    paths = _all_paths(t.base, x, y)
                    assert len(paths) == 1
                    p = unique_path(t, x, y)
                    assert (p.vertices, p.edges) == paths[0]


def test_random_hypertree_shapes():
    t = random_hypertree(3, [3], seed=1)
    assert t.edges == ((0, 1, 2),)
    t = random_hypertree(5, [3], seed=1)
    assert len(t.edges) == 2 and len(set(t.edges[0]) & set(t.edges[1])) == 1
    for seed in range(50):
        t = random_hypertree(9, [2, 3, 5, 7], seed)
        assert classify(t.base).hypertree
        assert verify_ordering(t.base, t.edge_order)
    with pytest.raises(HypergraphError):
        random_hypertree(4, [3], seed=0)


def test_random_hypertree_deterministic():
    assert random_hypertree(8, [2, 3], 5) == random_hypertree(8, [2, 3], 5)


def test_hypertree_validation():
    h = Hypergraph.on_range(5, [[1, 2, 3], [3, 4, 5]])
    with pytest.raises(HypergraphError):
        Hypertree.build(h, cycles=[(0, 1, 3), (2, 3, 4)])
    with pytest.raises(HypergraphError):
        Hypertree.build(Hypergraph.on_range(4, [[1, 2], [3, 4]]))


def test_enumerate_hypertrees_counts():
    # ordinary trees on n vertices: 1, 1, 2, 3, 6, 11, 23
    trees = enumerate_hypertrees(8, [2])
    counts = [sum(1 for h in trees if h.n == n) for n in range(2, 9)]
    assert counts == [1, 1, 2, 3, 6, 11, 23]
    for h in enumerate_hypertrees(7, [2, 3, 5]):
        assert classify(h).hypertree


def test_canonical_form_is_relabel_invariant():
    for seed in range(10):
        t = random_hypertree(8, [2, 3], seed)
        u = random_hypertree(8, [2, 3], seed)
        assert hypertree_canonical_form(t.base) == hypertree_canonical_form(u.base)
    a = Hypergraph.on_range(5, [[1, 2, 3], [3, 4], [4, 5]])
    b = Hypergraph.on_range(5, [[1, 2, 3], [3, 4], [3, 5]])
    assert hypertree_canonical_form(a) != hypertree_canonical_form(b)


def test_linear_interval_hypergraphs():
    hs = linear_interval_hypergraphs(5)
    assert len(hs) == 8
    assert all(classify(h).hypertree for h in hs)
    example = Hypergraph.on_range(9, [[1, 2, 3], [3, 4, 5], [5, 6], [6, 7, 8, 9]])
    assert example in linear_interval_hypergraphs(9)


def test_parse_hypergraph():
    h, cycles, order = parse_hypergraph(
        '{"vertices": ["a", "b", "c"], "edges": [["a", "b", "c"]], "cycles": [["c", "b", "a"]]}')
    assert h.vertices == ("a", "b", "c")
    assert cycles == ((2, 1, 0),) and order is None
    with pytest.raises(HypergraphError, match="line 1"):
        parse_hypergraph('{"vertices": [1, 2], "edges": [[1, 2]')
    with pytest.raises(HypergraphError):
        parse_hypergraph('{"vertices": [1, 2], "edges": [[1]]}')
