"""Polynomial-time morality checks for graphs of maximum degree at most 4.

All three checkers are greedy: they repeatedly delete a simplicial vertex
(plus, depending on the local situation, the edges between its neighbours)
and report a moral graph exactly when nothing is left.  The degree-4 check
needs a fixed rule priority; when several vertices qualify for the same rule
the one that became simplicial earliest wins (vertices simplicial in the
input count in id order).

Rule ids used in traces:

    1    degree 0/1 simplicial vertex, delete it
    2    degree 3 simplicial vertex, delete it and the edges among its neighbours
    k5   degree 4 simplicial vertex, the component is a K5 and goes entirely
    3    end of a triangle stack of length >= 4, delete it and its neighbour edge
    4    lone triangle (stack length 1), same deletion
    5    stack of length 2 in a degree-4 component, delete the vertex only
    6a   stack of length 3, d(v4, v5) in {2, inf}: delete vertex and neighbour edge
    6b   stack of length 3, both ends simplicial: delete both ends
    6c   stack of length 3, otherwise: delete vertex and neighbour edge
    alg1 any other simplicial vertex in a component of maximum degree <= 3
"""
from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import DegreeTooHigh, NotDegreeTwoSimplicial
from .graph import Edge, UndirectedGraph, connected_components, is_simplicial
from .pek import EliminationKit, MoralityVerdict, SearchStats, Status, TraceStep, check_morality_exact


@dataclass(frozen=True)
class TriangleStack:
    spine: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.spine) - 2

    def triangles(self) -> list[tuple[int, int, int]]:
        s = self.spine
        return [(s[i], s[i + 1], s[i + 2]) for i in range(self.length)]


def _grow(adj, spine, cap):
    on_spine = set(spine)
    while cap is None or len(spine) - 2 < cap:
        a, b = spine[-2], spine[-1]
        cands = [c for c in adj[a] & adj[b] if c not in on_spine]
        if not cands:
            break
        c = min(cands)
        spine.append(c)
        on_spine.add(c)
    return spine


def _stack_spine(adj, x, cap=None):
    a, b = sorted(adj[x])
    best = None
    for w2, w3 in ((a, b), (b, a)):
        spine = _grow(adj, [x, w2, w3], cap)
        if best is None or len(spine) > len(best):
            best = spine
    return best


def detect_triangle_stack(g: UndirectedGraph, x: int) -> TriangleStack:
    """Maximal stack of triangles starting at the degree-2 simplicial vertex ``x``.

    Both ways of naming x's neighbours as w2/w3 are grown and the longer spine
    kept; ties keep the smaller w2, and a choice between several extension
    vertices takes the smallest id.
    """
    nbrs = g.neighbors(x)
    if len(nbrs) != 2 or not is_simplicial(g, x):
        raise NotDegreeTwoSimplicial(f"vertex {x} is not a degree-2 simplicial vertex")
    return TriangleStack(tuple(_stack_spine(g._adj, x)))


class _Residual:
    """Mutable working copy of a graph for the greedy eliminations."""

    def __init__(self, g: UndirectedGraph):
        self.n = g.n
        self.labels = g.labels
        self.adj = {v: set(g._adj[v]) for v in g.vertices}
        self.ops = 0
        self.clock = 0
        self.stamp: dict[int, int] = {}
        self.queued: dict[int, tuple[int, int]] = {}
        self.heaps: dict[int, list] = {}
        self.steps: list[tuple[int, tuple[Edge, ...]]] = []
        self.trace: list[TraceStep] = []
        self.low_degree: set[int] = set()
        self.refresh(self.adj)

    # -- simplicial bookkeeping ---------------------------------------
    def is_simplicial(self, v):
        nb = self.adj[v]
        self.ops += 1 + len(nb) * len(nb)
        return all(len(nb - self.adj[u]) <= 1 for u in nb)

    def refresh(self, vs):
        for v in sorted(vs):
            if v not in self.adj:
                self.stamp.pop(v, None)
                continue
            if not self.is_simplicial(v):
                self.stamp.pop(v, None)
                continue
            if v not in self.stamp:
                self.clock += 1
                self.stamp[v] = self.clock
            cls = min(len(self.adj[v]), 4) if self.adj[v] else 1
            entry = (self.stamp[v], cls)
            if self.queued.get(v) != entry:
                self.queued[v] = entry
                heapq.heappush(self.heaps.setdefault(cls, []), (self.stamp[v], v))

    def _valid(self, stamp, v, cls):
        return self.stamp.get(v) == stamp and self.queued.get(v) == (stamp, cls)

    def first(self, cls):
        heap = self.heaps.get(cls, [])
        while heap and not self._valid(heap[0][0], heap[0][1], cls):
            heapq.heappop(heap)
        return heap[0][1] if heap else None

    def first_any(self):
        best = None
        for cls in self.heaps:
            v = self.first(cls)
            if v is not None and (best is None or self.stamp[v] < self.stamp[best]):
                best = v
        return best

    def all_in(self, cls):
        heap = [e for e in self.heaps.get(cls, []) if self._valid(e[0], e[1], cls)]
        heap = sorted(set(heap))
        self.heaps[cls] = list(heap)
        self.ops += len(heap)
        return [v for _, v in heap]

    # -- structure ----------------------------------------------------
    def neighbour_edges(self, x) -> tuple[Edge, ...]:
        nbrs = sorted(self.adj[x])
        return tuple((u, v) for u, v in combinations(nbrs, 2) if v in self.adj[u])

    def reaches_degree_four(self, s) -> bool:
        """Does the component of ``s`` still contain a vertex of degree >= 4?

        Degrees only shrink, so a component found free of such vertices is
        remembered and never searched again.
        """
        if s in self.low_degree:
            return False
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            self.ops += len(self.adj[u])
            if len(self.adj[u]) >= 4:
                return True
            for w in self.adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        self.low_degree |= seen
        return False

    def distance(self, s, t, banned, banned_edge):
        if s == t:
            return 0
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            self.ops += len(self.adj[u])
            for w in self.adj[u]:
                if w in banned or w in dist or {u, w} == banned_edge:
                    continue
                if w == t:
                    return dist[u] + 1
                dist[w] = dist[u] + 1
                queue.append(w)
        return math.inf

    # -- elimination ----------------------------------------------------
    def eliminate(self, x, excess=()):
        nbrs = self.adj.pop(x)
        self.stamp.pop(x, None)
        for u in nbrs:
            self.adj[u].discard(x)
        for u, v in excess:
            self.adj[u].discard(v)
            self.adj[v].discard(u)
        self.steps.append((x, tuple(excess)))
        dirty = set(nbrs)
        for u in nbrs:
            dirty |= self.adj[u]
        self.ops += len(dirty)
        self.refresh(dirty)

    def apply(self, rule, xs, edges_of=None):
        removed = []
        all_edges = []
        for x in xs:
            exc = edges_of(x) if edges_of else ()
            all_edges.extend(exc)
            self.eliminate(x, exc)
            removed.append(x)
        self.trace.append(TraceStep(rule, tuple(removed), tuple(all_edges)))

    def graph(self) -> UndirectedGraph:
        adj = [set() for _ in range(self.n)]
        for v, a in self.adj.items():
            adj[v] = a
        return UndirectedGraph(self.n, adj, self.adj.keys(), self.labels)

    def verdict(self) -> MoralityVerdict:
        stats = SearchStats(expansions=self.ops)
        if self.adj:
            return MoralityVerdict(Status.NOT_MORAL, stuck_witness=self.graph(), stats=stats, trace=self.trace)
        kit = EliminationKit.from_steps(self.steps)
        return MoralityVerdict(Status.MORAL, certificate=kit, stats=stats, trace=self.trace)


def _require_degree(g, limit):
    d = g.max_degree()
    if d > limit:
        raise DegreeTooHigh(f"maximum degree {d} exceeds {limit}")


def _run_alg1(r: _Residual):
    while True:
        x = r.first_any()
        if x is None:
            return
        r.apply("alg1", [x], r.neighbour_edges)


def check_deg_le2(g: UndirectedGraph) -> MoralityVerdict:
    """Paths and triangles are moral; a cycle of length four or more is not."""
    _require_degree(g, 2)
    cycles = [c for c in connected_components(g)
              if len(c) >= 4 and all(g.degree(v) == 2 for v in c)]
    if cycles:
        witness = g.induced(set().union(*cycles))
        return MoralityVerdict(Status.NOT_MORAL, stuck_witness=witness,
                               stats=SearchStats(expansions=len(g)))
    r = _Residual(g)
    _run_alg1(r)
    return r.verdict()


def greedy_elimination(g: UndirectedGraph) -> MoralityVerdict:
    """Delete any simplicial vertex together with every edge between its
    neighbours until stuck or empty.

    No degree restriction: on graphs with vertices of degree 4 or more a
    NOT_MORAL answer from this rule is not trustworthy.
    """
    r = _Residual(g)
    _run_alg1(r)
    return r.verdict()


def check_deg3(g: UndirectedGraph) -> MoralityVerdict:
    """Exact for maximum degree 3, where the greedy rule never goes wrong."""
    _require_degree(g, 3)
    return greedy_elimination(g)


def _classify_deg2(r: _Residual, x):
    """Rule id for a degree-2 simplicial vertex plus what to remove."""
    spine = _stack_spine(r.adj, x, cap=4)
    r.ops += len(spine) * 4
    m = len(spine) - 2
    if m >= 4:
        return "3", None
    if m == 1:
        return "4", None
    if m == 2:
        if r.reaches_degree_four(x):
            return "5", None
        return "alg1", None
    return "6", spine


def _classify_k33(r: _Residual, x, spine):
    w1, w2, w3, w4, w5 = spine
    # v1=w1, v4=w2, v2=w3, v5=w4, v3=w5
    d = r.distance(w2, w4, banned={w1, w3, w5}, banned_edge={w2, w4})
    if d == 2 or d == math.inf:
        return "6a", None
    y = w5
    if r.is_simplicial(y) and len(r.adj[x] & r.adj[y]) == 1:
        return "6b", y
    return "6c", None


def _deg4_step(r: _Residual) -> bool:
    x = r.first(1)
    if x is not None:
        r.apply("1", [x])
        return True
    x = r.first(3)
    if x is not None:
        r.apply("2", [x], r.neighbour_edges)
        return True
    x = r.first(4)
    if x is not None:
        clique = [x] + sorted(r.adj[x])
        r.apply("k5", clique)
        return True

    found = {}
    k33 = []
    for x in r.all_in(2):
        rule, spine = _classify_deg2(r, x)
        if rule == "3":
            r.apply("3", [x], r.neighbour_edges)
            return True
        if rule == "6":
            k33.append((x, spine))
        else:
            found.setdefault(rule, x)
    for rule in ("4", "5", "alg1"):
        if rule in found:
            x = found[rule]
            if rule == "5":
                r.apply("5", [x])
            else:
                r.apply(rule, [x], r.neighbour_edges)
            return True
    sub = {}
    for x, spine in k33:
        rule, y = _classify_k33(r, x, spine)
        if rule == "6a":
            r.apply("6a", [x], r.neighbour_edges)
            return True
        sub.setdefault(rule, (x, y))
    if "6b" in sub:
        x, y = sub["6b"]
        r.apply("6b", [x, y])
        return True
    if "6c" in sub:
        x, _ = sub["6c"]
        r.apply("6c", [x], r.neighbour_edges)
        return True
    return False


def check_deg4(g: UndirectedGraph) -> MoralityVerdict:
    """Greedy check for maximum degree 4 with a fixed rule priority.

    The verdict's ``trace`` lists every step as (rule id, removed vertices,
    removed edges); see the module docstring for the rule ids.
    """
    _require_degree(g, 4)
    r = _Residual(g)
    while _deg4_step(r):
        pass
    return r.verdict()


def _check_low_degree(g: UndirectedGraph) -> MoralityVerdict:
    d = g.max_degree()
    if d <= 2:
        return check_deg_le2(g)
    return check_deg3(g) if d == 3 else check_deg4(g)


def check(g: UndirectedGraph, budget: int | None = None) -> MoralityVerdict:
    """Decide morality component by component, dispatching on maximum degree.

    Components of maximum degree 5 or more go to the exact search, which
    needs ``budget`` when the component has more than 24 vertices.  That
    search runs with forced moves and hands residual components of maximum
    degree 4 or less back to the greedy checkers.
    """
    statuses = []
    steps = []
    trace = []
    stats = SearchStats()
    witness = None
    for comp in connected_components(g):
        sub = g.induced(comp)
        d = sub.max_degree()
        if d <= 2:
            v = check_deg_le2(sub)
        elif d == 3:
            v = check_deg3(sub)
        elif d == 4:
            v = check_deg4(sub)
        else:
            v = check_morality_exact(sub, budget=budget, prune=True, delegate=_check_low_degree,
                                     small_excess_first=True)
        stats.expansions += v.stats.expansions
        stats.memo_hits += v.stats.memo_hits
        trace.extend(v.trace)
        statuses.append(v.status)
        if v.status is Status.NOT_MORAL:
            witness = v.stuck_witness
            break
        if v.certificate is not None:
            steps.extend(v.certificate.steps())
    if Status.NOT_MORAL in statuses:
        return MoralityVerdict(Status.NOT_MORAL, stuck_witness=witness, stats=stats, trace=trace)
    if Status.UNKNOWN in statuses:
        return MoralityVerdict(Status.UNKNOWN, stats=stats, trace=trace)
    return MoralityVerdict(Status.MORAL, certificate=EliminationKit.from_steps(steps),
                           stats=stats, trace=trace)
