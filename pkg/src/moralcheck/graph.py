"""Immutable undirected graphs and DAGs over dense integer vertex ids.

Vertices are the integers ``0..n-1``.  Removing a vertex never re-indexes
the rest; the vertex is simply marked absent, so anything computed on a
residual graph still names vertices of the original input.
"""
from __future__ import annotations

import math
from collections import deque
from graphlib import CycleError, TopologicalSorter
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import CyclicInput, ExcessNotInNeighbourhood, IndexOutOfRange, SelfLoop

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Canonical (smaller id first) form of the unordered pair ``uv``."""
    if u == v:
        raise SelfLoop(f"self-loop on vertex {u}")
    return (u, v) if u < v else (v, u)


class UndirectedGraph:
    """A simple undirected graph with a presence mask.

    Build one with :func:`build_graph`.  Instances are treated as values:
    every transformation returns a new graph.
    """

    __slots__ = ("n", "_adj", "_present", "labels", "_hash")

    def __init__(self, n, adj, present=None, labels=None):
        self.n = n
        self._adj = tuple(frozenset(a) for a in adj)
        self._present = frozenset(range(n)) if present is None else frozenset(present)
        self.labels = tuple(labels) if labels is not None else None
        self._hash = None

    # -- basic queries -------------------------------------------------
    def _check(self, v):
        if not (0 <= v < self.n) or v not in self._present:
            raise IndexOutOfRange(f"vertex {v} is not in the graph")

    @property
    def vertices(self) -> list[int]:
        return sorted(self._present)

    @property
    def present(self) -> frozenset[int]:
        return self._present

    def __contains__(self, v) -> bool:
        return v in self._present

    def __len__(self) -> int:
        return len(self._present)

    def neighbors(self, v: int) -> frozenset[int]:
        self._check(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self._adj[u]

    def max_degree(self) -> int:
        return max((len(self._adj[v]) for v in self._present), default=0)

    def edges(self) -> list[Edge]:
        return sorted((u, v) for u in self._present for v in self._adj[u] if u < v)

    def num_edges(self) -> int:
        return sum(len(self._adj[v]) for v in self._present) // 2

    def label(self, v: int) -> str:
        if self.labels is not None:
            return self.labels[v]
        return str(v)

    def adjacency(self) -> dict[int, frozenset[int]]:
        return {v: self._adj[v] for v in sorted(self._present)}

    # -- local structure -----------------------------------------------
    def neighbourhood_edges(self, x: int) -> list[Edge]:
        """Edges of ``G[N(x)]`` in lexicographic order."""
        nbrs = sorted(self.neighbors(x))
        return [(u, v) for u, v in combinations(nbrs, 2) if v in self._adj[u]]

    # -- transformations -----------------------------------------------
    def remove_vertex_and_edges(self, x: int, excess: Iterable[Edge] = ()) -> UndirectedGraph:
        """Return ``G - x - excess``; every excess edge must join two neighbours of x."""
        self._check(x)
        nx_ = self._adj[x]
        adj = list(self._adj)
        for e in excess:
            u, v = edge(*e)
            if u not in nx_ or v not in nx_ or v not in self._adj[u]:
                raise ExcessNotInNeighbourhood(
                    f"edge {u}-{v} is not an edge between neighbours of {x}"
                )
            adj[u] = adj[u] - {v}
            adj[v] = adj[v] - {u}
        for u in nx_:
            adj[u] = adj[u] - {x}
        adj[x] = frozenset()
        return UndirectedGraph(self.n, adj, self._present - {x}, self.labels)

    def without_vertices(self, vs: Iterable[int]) -> UndirectedGraph:
        gone = frozenset(vs)
        adj = [a - gone if v not in gone else frozenset() for v, a in enumerate(self._adj)]
        return UndirectedGraph(self.n, adj, self._present - gone, self.labels)

    def without_edges(self, es: Iterable[Edge]) -> UndirectedGraph:
        adj = [set(a) for a in self._adj]
        for u, v in es:
            adj[u].discard(v)
            adj[v].discard(u)
        return UndirectedGraph(self.n, adj, self._present, self.labels)

    def with_edges(self, es: Iterable[Edge]) -> UndirectedGraph:
        adj = [set(a) for a in self._adj]
        for e in es:
            u, v = edge(*e)
            if u not in self._present or v not in self._present:
                raise IndexOutOfRange(f"edge {u}-{v} touches a missing vertex")
            adj[u].add(v)
            adj[v].add(u)
        return UndirectedGraph(self.n, adj, self._present, self.labels)

    def induced(self, vs: Iterable[int]) -> UndirectedGraph:
        keep = frozenset(vs) & self._present
        return self.without_vertices(self._present - keep)

    def relabel(self, perm: Sequence[int]) -> UndirectedGraph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return build_graph(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    # -- value semantics -----------------------------------------------
    def _key(self):
        return (self.n, self._present, self._adj)

    def __eq__(self, other):
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"UndirectedGraph(n={self.n}, edges={self.edges()})"


def build_graph(n: int, edges: Iterable[Sequence[int]], labels=None) -> UndirectedGraph:
    """Build a simple graph on ``n`` vertices; duplicate edges are ignored."""
    adj = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge {u}-{v} out of range for n={n}")
        if u == v:
            raise SelfLoop(f"self-loop on vertex {u}")
        adj[u].add(v)
        adj[v].add(u)
    return UndirectedGraph(n, adj, labels=labels)


def deficiency(g: UndirectedGraph, x: int) -> set[Edge]:
    """Non-edges among the neighbours of ``x``."""
    nbrs = sorted(g.neighbors(x))
    return {(u, v) for u, v in combinations(nbrs, 2) if not g.has_edge(u, v)}


def is_simplicial(g: UndirectedGraph, x: int) -> bool:
    nbrs = g.neighbors(x)
    for u in nbrs:
        # N(x) - {u} must lie inside N(u)
        if len(nbrs - g._adj[u]) > 1:
            return False
    return True


def simplicial_vertices(g: UndirectedGraph) -> list[int]:
    return [v for v in g.vertices if is_simplicial(g, v)]


def remove_vertex_and_edges(g: UndirectedGraph, x: int, excess: Iterable[Edge] = ()) -> UndirectedGraph:
    return g.remove_vertex_and_edges(x, excess)


def connected_components(g: UndirectedGraph) -> list[frozenset[int]]:
    """Components of the present vertices, ordered by smallest member."""
    seen: set[int] = set()
    out = []
    for s in g.vertices:
        if s in seen:
            continue
        comp = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g._adj[u]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


def distance(g: UndirectedGraph, u: int, v: int) -> float:
    """Hop distance from u to v, ``math.inf`` when disconnected."""
    g._check(u)
    g._check(v)
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        a = queue.popleft()
        for b in g._adj[a]:
            if b not in dist:
                if b == v:
                    return dist[a] + 1
                dist[b] = dist[a] + 1
                queue.append(b)
    return math.inf


class Dag:
    """Directed acyclic graph; ``parents[v]`` and ``children[v]`` are frozensets."""

    __slots__ = ("n", "parents", "children", "labels", "_order")

    def __init__(self, n: int, arcs: Iterable[Sequence[int]] = (), labels=None):
        parents = [set() for _ in range(n)]
        children = [set() for _ in range(n)]
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise IndexOutOfRange(f"arc {u}->{v} out of range for n={n}")
            if u == v:
                raise SelfLoop(f"self-loop on vertex {u}")
            parents[v].add(u)
            children[u].add(v)
        self.n = n
        self.parents = tuple(frozenset(p) for p in parents)
        self.children = tuple(frozenset(c) for c in children)
        self.labels = tuple(labels) if labels is not None else None
        try:
            self._order = tuple(TopologicalSorter({v: self.parents[v] for v in range(n)}).static_order())
        except CycleError as exc:
            raise CyclicInput(f"directed cycle through {exc.args[1]}") from None

    def arcs(self) -> list[Edge]:
        return sorted((u, v) for v in range(self.n) for u in self.parents[v])

    def topological_order(self) -> tuple[int, ...]:
        return self._order

    def skeleton(self) -> UndirectedGraph:
        return build_graph(self.n, self.arcs(), labels=self.labels)

    def _check(self, v):
        if not 0 <= v < self.n:
            raise IndexOutOfRange(f"vertex {v} is not in the DAG")

    def __eq__(self, other):
        if not isinstance(other, Dag):
            return NotImplemented
        return self.n == other.n and self.parents == other.parents

    def __hash__(self):
        return hash((self.n, self.parents))

    def __repr__(self):
        return f"Dag(n={self.n}, arcs={self.arcs()})"


def iter_edges(es: Iterable[Sequence[int]]) -> Iterator[Edge]:
    for u, v in es:
        yield edge(u, v)
