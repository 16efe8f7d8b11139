"""Hypergraphs, hypertree recognition, leaf-edge orderings and paths.

Vertices are referred to internally by canonical index (position in the
input vertex list).  Edges are stored as sorted tuples of indices.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Sequence


class HypergraphError(ValueError):
    pass


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple
    edges: tuple  # tuple of sorted index tuples

    def __post_init__(self):
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise HypergraphError("duplicate vertex labels")
        seen = set()
        for e in self.edges:
            if len(e) < 2:
                raise HypergraphError(f"edge {self.edge_labels(e)} has fewer than 2 vertices")
            if len(set(e)) != len(e):
                raise HypergraphError(f"edge {e} repeats a vertex")
            if any(not 0 <= v < n for v in e):
                raise HypergraphError(f"edge {e} is not contained in the vertex set")
            if tuple(sorted(e)) != tuple(e):
                raise HypergraphError("edges must be stored as sorted index tuples")
            if e in seen:
                raise HypergraphError(f"duplicate edge {self.edge_labels(e)}")
            seen.add(e)

    @classmethod
    def from_labels(cls, vertices: Sequence[Hashable], edges: Sequence[Sequence[Hashable]]):
        vertices = tuple(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise HypergraphError("duplicate vertex labels")
        out = []
        for e in edges:
            try:
                idx = [index[v] for v in e]
            except KeyError as exc:
                raise HypergraphError(f"edge {list(e)} uses unknown vertex {exc.args[0]!r}") from None
            if len(set(idx)) != len(idx):
                raise HypergraphError(f"edge {list(e)} repeats a vertex")
            if len(idx) < 2:
                raise HypergraphError(f"edge {list(e)} has fewer than 2 vertices")
            out.append(tuple(sorted(idx)))
        return cls(vertices, tuple(out))

    @classmethod
    def on_range(cls, n: int, edges):
        """Hypergraph on vertices ``1..n`` with edges given by label."""
        return cls.from_labels(range(1, n + 1), edges)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge_labels(self, e) -> list:
        return [self.vertices[v] for v in e]

    def labelled_edges(self) -> list:
        return [self.edge_labels(e) for e in self.edges]

    @cached_property
    def incidence(self) -> tuple:
        """For each vertex, the indices of the edges containing it."""
        inc = [[] for _ in range(self.n)]
        for j, e in enumerate(self.edges):
            for v in e:
                inc[v].append(j)
        return tuple(tuple(x) for x in inc)


@dataclass(frozen=True)
class Classification:
    connected: bool
    linear: bool
    hypertree: bool

    def describe(self) -> str:
        return ", ".join([
            "connected" if self.connected else "not connected",
            "linear" if self.linear else "not linear",
            "hypertree" if self.hypertree else "not hypertree",
        ])


def _connected(h: Hypergraph) -> bool:
    if h.n == 0:
        return True
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for j in h.incidence[v]:
            for u in h.edges[j]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return len(seen) == h.n


def _linear(h: Hypergraph) -> bool:
    sets = [set(e) for e in h.edges]
    for a in range(len(sets)):
        for b in range(a + 1, len(sets)):
            if len(sets[a] & sets[b]) > 1:
                return False
    return True


def classify(h: Hypergraph) -> Classification:
    connected = _connected(h)
    linear = _linear(h)
    # the vertex/edge incidence graph is a tree iff it is connected with
    # one fewer incidence than it has nodes
    incidences = sum(len(e) for e in h.edges)
    tree = connected and incidences == h.n + len(h.edges) - 1
    return Classification(connected, linear, tree)


def verify_ordering(h: Hypergraph, order: Sequence[int]) -> bool:
    """Each edge after the first meets the union of its predecessors in one vertex."""
    if sorted(order) != list(range(len(h.edges))):
        return False
    if not order:
        return True
    covered = set(h.edges[order[0]])
    for j in order[1:]:
        if len(covered.intersection(h.edges[j])) != 1:
            return False
        covered.update(h.edges[j])
    return True


def leaf_edge_ordering(h: Hypergraph) -> tuple:
    """An edge ordering in which every edge meets its predecessors in one vertex.

    Grows the ordering from edge 0, always appending the lowest-indexed
    edge that touches the current union; in a hypertree such an edge meets
    it in exactly one vertex.
    """
    if not classify(h).hypertree:
        raise HypergraphError("leaf-edge ordering requires a hypertree")
    k = len(h.edges)
    if k == 0:
        return ()
    order = [0]
    covered = set(h.edges[0])
    remaining = set(range(1, k))
    while remaining:
        j = min(j for j in remaining if covered.intersection(h.edges[j]))
        order.append(j)
        covered.update(h.edges[j])
        remaining.remove(j)
    return tuple(order)


def default_cycles(h: Hypergraph, order=None) -> tuple:
    """Per edge, its vertices in ascending index order, read cyclically."""
    return tuple(tuple(e) for e in h.edges)


@dataclass(frozen=True)
class HyperPath:
    vertices: tuple
    edges: tuple  # original edge indices

    def __len__(self):
        return len(self.edges)


@dataclass(frozen=True)
class Hypertree:
    """A validated hypertree with a fixed leaf-edge ordering and edge cycles.

    ``cycles[j]`` lists the vertices of edge ``j`` in cyclic order: each
    vertex maps to the next one, the last back to the first.
    """

    base: Hypergraph
    edge_order: tuple
    cycles: tuple
    successor: tuple = field(init=False, repr=False, compare=False)
    rank: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        h = self.base
        if not classify(h).hypertree:
            raise HypergraphError("not a hypertree")
        if not verify_ordering(h, self.edge_order):
            raise HypergraphError(f"edge order {list(self.edge_order)} violates the leaf-edge condition")
        if len(self.cycles) != len(h.edges):
            raise HypergraphError("need one cycle per edge")
        succ = []
        for j, (e, cyc) in enumerate(zip(h.edges, self.cycles)):
            if sorted(cyc) != list(e):
                raise HypergraphError(f"cycle for edge {j} is not a cyclic order of that edge")
            succ.append({cyc[i]: cyc[(i + 1) % len(cyc)] for i in range(len(cyc))})
        rank = [0] * len(h.edges)
        for pos, j in enumerate(self.edge_order, start=1):
            rank[j] = pos
        object.__setattr__(self, "successor", tuple(succ))
        object.__setattr__(self, "rank", tuple(rank))

    @classmethod
    def build(cls, h: Hypergraph, edge_order=None, cycles=None):
        if not classify(h).hypertree:
            raise HypergraphError("not a hypertree: " + classify(h).describe())
        if edge_order is None:
            edge_order = leaf_edge_ordering(h)
        if cycles is None:
            cycles = default_cycles(h, edge_order)
        return cls(h, tuple(edge_order), tuple(tuple(c) for c in cycles))

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def edges(self) -> tuple:
        return self.base.edges

    def cyc(self, j: int, v: int) -> int:
        return self.successor[j][v]

    @cached_property
    def _parents(self) -> tuple:
        """BFS parent pointers in the incidence tree, one table per root vertex."""
        h = self.base
        tables = []
        for root in range(h.n):
            parent = {("v", root): None}
            queue = deque([("v", root)])
            while queue:
                node = queue.popleft()
                kind, x = node
                nbrs = [("e", j) for j in h.incidence[x]] if kind == "v" else [("v", u) for u in h.edges[x]]
                for nb in nbrs:
                    if nb not in parent:
                        parent[nb] = node
                        queue.append(nb)
            tables.append(parent)
        return tuple(tables)

    def path(self, x: int, y: int) -> HyperPath:
        if x == y:
            raise HypergraphError("path endpoints must be distinct")
        parent = self._parents[x]
        node = ("v", y)
        seq = []
        while node is not None:
            seq.append(node)
            node = parent[node]
        seq.reverse()
        return HyperPath(tuple(v for k, v in seq if k == "v"), tuple(v for k, v in seq if k == "e"))

    @cached_property
    def pivots(self) -> dict:
        """``(x, y) -> (j, a, b)``: the lowest-ranked edge on the x..y path and its flanking vertices."""
        out = {}
        for x in range(self.n):
            for y in range(self.n):
                if x == y:
                    continue
                p = self.path(x, y)
                r = min(range(len(p.edges)), key=lambda i: self.rank[p.edges[i]])
                out[x, y] = (p.edges[r], p.vertices[r], p.vertices[r + 1])
        return out

    def to_json(self) -> dict:
        h = self.base
        return {
            "vertices": list(h.vertices),
            "edges": h.labelled_edges(),
            "cycles": [h.edge_labels(c) for c in self.cycles],
            "edge_order": list(self.edge_order),
        }


def unique_path(t: Hypertree, x, y) -> HyperPath:
    """The unique path between two distinct vertices (given by index)."""
    return t.path(x, y)


# -- generators -----------------------------------------------------------

def _feasible_sizes(n: int, sizes) -> list:
    """reach[m] is True when m extra vertices can be added with the given sizes."""
    reach = [False] * (n + 1)
    reach[0] = True
    for m in range(1, n + 1):
        reach[m] = any(s - 1 <= m and reach[m - (s - 1)] for s in sizes)
    return reach


def random_hypertree(n: int, sizes, seed=None, shuffle_labels: bool = True) -> Hypertree:
    """Grow a hypertree on ``1..n`` by attaching fresh edges at existing vertices."""
    sizes = sorted(set(sizes))
    if not sizes or min(sizes) < 2:
        raise HypergraphError("edge sizes must be at least 2")
    rng = random.Random(seed)
    if n == 1:
        return Hypertree.build(Hypergraph((1,), ()))
    reach = _feasible_sizes(n, sizes)
    first = [s for s in sizes if s <= n and reach[n - s]]
    if not first:
        raise HypergraphError(f"cannot cover {n} vertices with edge sizes {sizes}")
    s = rng.choice(first)
    edges = [list(range(s))]
    count = s
    while count < n:
        left = n - count
        options = [s for s in sizes if s - 1 <= left and reach[left - (s - 1)]]
        s = rng.choice(options)
        anchor = rng.randrange(count)
        edges.append([anchor] + list(range(count, count + s - 1)))
        count += s - 1
    labels = list(range(1, n + 1))
    if shuffle_labels:
        rng.shuffle(labels)
        rng.shuffle(edges)
    h = Hypergraph.on_range(n, [[labels[v] for v in e] for e in edges])
    return Hypertree.build(h)


def _tree_code(adj, root, parent=None) -> str:
    kids = sorted(_tree_code(adj, c, root) for c in adj[root] if c != parent)
    return ("e" if root[0] == "e" else "v") + "(" + "".join(kids) + ")"


def hypertree_canonical_form(h: Hypergraph) -> str:
    """Isomorphism invariant, complete for hypertrees (AHU code of the incidence tree)."""
    adj = {("v", v): [] for v in range(h.n)}
    for j, e in enumerate(h.edges):
        adj[("e", j)] = [("v", v) for v in e]
        for v in e:
            adj[("v", v)].append(("e", j))
    # centre(s) of the tree by repeated leaf stripping
    degree = {k: len(v) for k, v in adj.items()}
    layer = [k for k, d in degree.items() if d <= 1]
    left = len(adj)
    while left > 2:
        left -= len(layer)
        nxt = []
        for leaf in layer:
            for nb in adj[leaf]:
                degree[nb] -= 1
                if degree[nb] == 1:
                    nxt.append(nb)
            degree[leaf] = 0
        layer = nxt
    return min(_tree_code(adj, c) for c in layer)


def enumerate_hypertrees(max_n: int, sizes) -> list:
    """All hypertrees on at most ``max_n`` vertices with edge sizes in ``sizes``,
    one representative per isomorphism class, at least one edge each."""
    sizes = sorted(set(sizes))
    found = {}
    frontier = []
    for s in sizes:
        if s <= max_n:
            h = Hypergraph.on_range(s, [list(range(1, s + 1))])
            found.setdefault(hypertree_canonical_form(h), h)
            frontier.append(h)
    while frontier:
        nxt = []
        for h in frontier:
            for s in sizes:
                m = h.n + s - 1
                if m > max_n:
                    continue
                for anchor in range(h.n):
                    edges = h.labelled_edges() + [[anchor + 1] + list(range(h.n + 1, m + 1))]
                    g = Hypergraph.on_range(m, edges)
                    key = hypertree_canonical_form(g)
                    if key not in found:
                        found[key] = g
                        nxt.append(g)
        frontier = nxt
    return sorted(found.values(), key=lambda g: (g.n, len(g.edges), g.edges))


def linear_interval_hypergraphs(n: int) -> list:
    """Connected linear interval hypergraphs on ``1..n``.

    Consecutive intervals overlap in exactly one vertex, so these are in
    bijection with compositions of ``n - 1``.
    """
    from .combinatorics import compositions

    if n < 2:
        return []
    out = []
    for comp in compositions(n - 1):
        edges = []
        start = 1
        for part in comp:
            edges.append(list(range(start, start + part + 1)))
            start += part
        out.append(Hypergraph.on_range(n, edges))
    return out


# -- file format ----------------------------------------------------------

def parse_hypergraph(text: str):
    """Parse the JSON hypergraph format.

    Returns ``(hypergraph, cycles, edge_order)``; the last two are ``None``
    when omitted.  Cycles come back as index tuples.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise HypergraphError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise HypergraphError("expected an object with 'vertices' and 'edges'")
    h = Hypergraph.from_labels(data["vertices"], data["edges"])
    index = {v: i for i, v in enumerate(h.vertices)}
    cycles = None
    if data.get("cycles") is not None:
        raw = data["cycles"]
        if len(raw) != len(h.edges):
            raise HypergraphError("'cycles' must list one cycle per edge")
        try:
            cycles = tuple(tuple(index[v] for v in c) for c in raw)
        except KeyError as exc:
            raise HypergraphError(f"cycle uses unknown vertex {exc.args[0]!r}") from None
    order = data.get("edge_order")
    if order is not None:
        order = tuple(int(j) for j in order)
    return h, cycles, order


def load_hypergraph(path):
    with open(path) as fh:
        return parse_hypergraph(fh.read())


def dump_hypergraph(h: Hypergraph, cycles=None, edge_order=None) -> str:
    data = {"vertices": list(h.vertices), "edges": h.labelled_edges()}
    if cycles is not None:
        data["cycles"] = [h.edge_labels(c) for c in cycles]
    if edge_order is not None:
        data["edge_order"] = list(edge_order)
    return json.dumps(data)
