"""Elimination kits, the exact morality search and witness-DAG construction.

A graph is moral exactly when it has a perfect elimination kit: an order in
which every vertex is simplicial at its turn, together with the edges
("excess") dropped between its neighbours when it leaves.  The exact search
always branches on one simplicial vertex only; any simplicial vertex of a
moral graph can start some perfect kit, so the choice of vertex never needs
to be revisited, only the choice of excess.
"""
from __future__ import annotations

import enum
import sys
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .errors import BudgetRequired, InvalidKit, MalformedKit
from .graph import Dag, Edge, UndirectedGraph, build_graph, edge, is_simplicial

DEFAULT_UNBOUNDED_LIMIT = 24


class Status(str, enum.Enum):
    MORAL = "MORAL"
    NOT_MORAL = "NOT_MORAL"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class EliminationKit:
    ordering: tuple[int, ...]
    excesses: Mapping[int, frozenset[Edge]] = field(default_factory=dict)

    @classmethod
    def from_steps(cls, steps: Iterable[tuple[int, Iterable[Sequence[int]]]]) -> EliminationKit:
        order = []
        exc = {}
        for x, es in steps:
            order.append(x)
            es = frozenset(edge(*e) for e in es)
            if es:
                exc[x] = es
        return cls(tuple(order), exc)

    def excess(self, v: int) -> frozenset[Edge]:
        return self.excesses.get(v, frozenset())

    def steps(self) -> list[tuple[int, frozenset[Edge]]]:
        return [(x, self.excess(x)) for x in self.ordering]

    def all_excess_edges(self) -> set[Edge]:
        return set().union(*self.excesses.values()) if self.excesses else set()

    def __eq__(self, other):
        if not isinstance(other, EliminationKit):
            return NotImplemented
        return self.steps() == other.steps()

    def __hash__(self):
        return hash(tuple(self.steps()))


@dataclass
class SearchStats:
    expansions: int = 0
    memo_hits: int = 0


@dataclass(frozen=True)
class TraceStep:
    rule: str
    removed: tuple[int, ...]
    edges: tuple[Edge, ...] = ()


@dataclass
class MoralityVerdict:
    status: Status
    certificate: EliminationKit | None = None
    stuck_witness: UndirectedGraph | None = None
    stats: SearchStats = field(default_factory=SearchStats)
    trace: list[TraceStep] = field(default_factory=list)

    @property
    def is_moral(self) -> bool:
        return self.status is Status.MORAL


# -- kit validation ------------------------------------------------------

def _replay(g: UndirectedGraph, steps):
    """Yield ``(index, residual_before, x, excess)`` while checking structure."""
    cur = g
    for i, (x, exc) in enumerate(steps, start=1):
        if x not in cur:
            raise MalformedKit(f"step {i}: vertex {x} is not in the eliminated graph")
        nbrs = cur.neighbors(x)
        for u, v in exc:
            if u not in nbrs or v not in nbrs or not cur.has_edge(u, v):
                raise MalformedKit(f"step {i}: excess edge {u}-{v} is not between neighbours of {x}")
        yield i, cur, x, exc
        cur = cur.remove_vertex_and_edges(x, exc)


def _check_ordering(g: UndirectedGraph, kit: EliminationKit):
    if sorted(kit.ordering) != g.vertices:
        raise MalformedKit("ordering is not a permutation of the graph's vertices")
    extra = set(kit.excesses) - set(kit.ordering)
    if extra:
        raise MalformedKit(f"excess given for vertices outside the ordering: {sorted(extra)}")


def first_invalid_step(g: UndirectedGraph, kit: EliminationKit) -> int | None:
    """1-based index of the first vertex that is not simplicial at its turn."""
    _check_ordering(g, kit)
    for i, cur, x, _ in _replay(g, kit.steps()):
        if not is_simplicial(cur, x):
            return i
    return None


def validate_pek(g: UndirectedGraph, kit: EliminationKit) -> bool:
    return first_invalid_step(g, kit) is None


def validate_partial_pek(g: UndirectedGraph, prefix: Iterable[tuple[int, Iterable[Sequence[int]]]]) -> bool:
    """True when every step of ``prefix`` eliminates a then-simplicial vertex and
    the leftover graph is non-empty with no simplicial vertex."""
    steps = [(x, frozenset(edge(*e) for e in es)) for x, es in prefix]
    if not steps:
        return False
    if len({x for x, _ in steps}) != len(steps):
        raise MalformedKit("prefix repeats a vertex")
    cur = g
    for _, cur, x, exc in _replay(g, steps):
        if not is_simplicial(cur, x):
            return False
    cur = cur.remove_vertex_and_edges(*steps[-1])
    if len(cur) == 0:
        return False
    return not any(is_simplicial(cur, v) for v in cur.vertices)


# -- witness DAG -----------------------------------------------------------

def immoralize(g: UndirectedGraph, kit: EliminationKit) -> Dag:
    """Orient ``g`` into a DAG whose moral graph is ``g``.

    Each vertex becomes a sink below its neighbours in the graph left at its
    elimination step; the excess edges are left out and come back as fills.
    """
    try:
        bad = first_invalid_step(g, kit)
    except MalformedKit as exc:
        raise InvalidKit(str(exc)) from None
    if bad is not None:
        raise InvalidKit(f"invalid kit at step {bad}", step=bad)
    arcs = []
    cur = g
    for x, exc in kit.steps():
        arcs.extend((u, x) for u in sorted(cur.neighbors(x)))
        cur = cur.remove_vertex_and_edges(x, exc)
    return Dag(g.n, arcs, labels=g.labels)


# -- exact search ----------------------------------------------------------

class _Exhausted(Exception):
    pass


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _components(present: int, adj) -> list[int]:
    out = []
    rest = present
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        out.append(comp)
        rest &= ~comp
    return out


class _Search:
    def __init__(self, budget, stats, n=0, forced=False, delegate=None, labels=None, small_first=False):
        self.budget = budget
        self.stats = stats
        self.failed = set()
        self.stuck = None
        self.n = n
        self.forced = forced
        self.delegate = delegate
        self.labels = labels
        self.small_first = small_first

    def solve(self, present, adj, queue, first=None):
        steps = []
        for comp in _components(present, adj):
            sub = [v for v in queue if (comp >> v) & 1]
            f = first if first is not None and (comp >> first) & 1 else None
            r = self.solve_connected(comp, adj, sub, f)
            if r is None:
                return None
            steps.extend(r)
        return steps

    def solve_connected(self, comp, adj, queue, first=None):
        key = (comp, tuple(adj[v] for v in _bits(comp)))
        if key in self.failed:
            self.stats.memo_hits += 1
            return None
        self.stats.expansions += 1
        if self.budget is not None and self.stats.expansions > self.budget:
            raise _Exhausted
        if self.delegate is not None and first is None:
            if all(adj[v].bit_count() <= 4 for v in _bits(comp)):
                verdict = self.delegate(_graph_from_key(self.n, key, self.labels))
                if verdict.status is Status.MORAL:
                    return verdict.certificate.steps()
                if self.stuck is None:
                    self.stuck = verdict.stuck_witness
                self.failed.add(key)
                return None

        # simplicial vertices in discovery order: carried-over queue first,
        # then newly simplicial ones by id
        simp = {}
        for v in _bits(comp):
            nb = adj[v]
            ok = True
            for u in _bits(nb):
                if nb & ~adj[u] & ~(1 << u):
                    ok = False
                    break
            if ok:
                simp[v] = sum((adj[u] & nb).bit_count() for u in _bits(nb)) // 2
        if not simp:
            if self.stuck is None:
                self.stuck = _graph_from_key(self.n, key, self.labels)
            self.failed.add(key)
            return None
        order = [v for v in queue if v in simp]
        seen = set(order)
        order.extend(v for v in sorted(simp) if v not in seen)

        forced = False
        if first is not None:
            if first not in simp:
                raise ValueError(f"vertex {first} is not simplicial")
            x = first
        else:
            x = None
            if self.forced:
                x = next((v for v in order if _isolated_clique(v, adj)), None)
                forced = x is not None
            if x is None:
                # fewest excess branches first, discovery order breaks ties
                x = min(order, key=lambda v: simp[v])
        nb = adj[x]
        nbrs = list(_bits(nb))
        nedges = [(u, v) for u, v in combinations(nbrs, 2) if (adj[u] >> v) & 1]
        rest = comp & ~(1 << x)
        base = list(adj)
        base[x] = 0
        for u in nbrs:
            base[u] &= ~(1 << x)
        child_queue = [v for v in order if v != x]

        if forced:
            sizes = [len(nedges)]
        elif self.small_first:
            sizes = range(len(nedges) + 1)
        else:
            sizes = range(len(nedges), -1, -1)
        for k in sizes:
            for subset in combinations(nedges, k):
                a = base.copy()
                for u, v in subset:
                    a[u] &= ~(1 << v)
                    a[v] &= ~(1 << u)
                r = self.solve(rest, a, child_queue)
                if r is not None:
                    return [(x, subset)] + r
        self.failed.add(key)
        return None


def _isolated_clique(x, adj) -> bool:
    """True when no two neighbours of simplicial ``x`` share a neighbour
    outside ``N[x]``.  Dropping every neighbourhood edge together with ``x``
    then keeps a moral graph moral, so no other excess needs trying."""
    outside = ~(adj[x] | (1 << x))
    nbrs = list(_bits(adj[x]))
    for i, u in enumerate(nbrs):
        for v in nbrs[i + 1:]:
            if adj[u] & adj[v] & outside:
                return False
    return True


def _masks(g: UndirectedGraph):
    adj = [0] * g.n
    for v in g.present:
        m = 0
        for u in g._adj[v]:
            m |= 1 << u
        adj[v] = m
    present = 0
    for v in g.present:
        present |= 1 << v
    return present, adj


def _graph_from_key(n, key, labels=None) -> UndirectedGraph:
    comp, rows = key
    es = []
    for v, row in zip(_bits(comp), rows):
        es.extend((v, u) for u in _bits(row) if u > v)
    g = build_graph(n, es, labels=labels)
    return g.induced(_bits(comp))


def check_morality_exact(
    g: UndirectedGraph,
    budget: int | None = None,
    first: int | None = None,
    *,
    prune: bool = False,
    delegate: Callable[[UndirectedGraph], MoralityVerdict] | None = None,
    small_excess_first: bool = False,
) -> MoralityVerdict:
    """Decide morality of ``g`` by exhaustive search over excess choices.

    ``budget`` caps the number of residual expansions; it is required for
    graphs with more than 24 vertices.  ``first`` forces that (simplicial)
    vertex to be eliminated first.

    With ``prune`` a simplicial vertex whose neighbours share no neighbour
    outside its closed neighbourhood is eliminated with all its neighbourhood
    edges and no branching.  ``delegate``, if given, decides every residual
    component of maximum degree at most 4.  Both
    are off by default so the plain search can serve as a reference.

    Excess sets are tried largest first unless ``small_excess_first`` is
    set; smallest first is far cheaper on dense, nearly chordal inputs.
    """
    if budget is None and len(g) > DEFAULT_UNBOUNDED_LIMIT:
        raise BudgetRequired(f"graph has {len(g)} vertices; pass an expansion budget")
    if budget is not None and budget <= 0:
        raise ValueError("budget must be positive")
    stats = SearchStats()
    search = _Search(budget, stats, g.n, prune, delegate, g.labels, small_excess_first)
    present, adj = _masks(g)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * len(g) + 200))
    try:
        steps = []
        unknown = False
        comps = _components(present, adj)
        if first is not None:
            comps.sort(key=lambda c: not (c >> first) & 1)
        for comp in comps:
            f = first if first is not None and (comp >> first) & 1 else None
            search.stuck = None
            try:
                r = search.solve_connected(comp, adj, [], f)
            except _Exhausted:
                unknown = True
                break
            if r is None:
                return MoralityVerdict(Status.NOT_MORAL, stuck_witness=search.stuck, stats=stats)
            steps.extend(r)
    finally:
        sys.setrecursionlimit(limit)
    if unknown:
        return MoralityVerdict(Status.UNKNOWN, stats=stats)
    return MoralityVerdict(Status.MORAL, certificate=EliminationKit.from_steps(steps), stats=stats)
