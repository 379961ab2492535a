"""Moral graphs of DAGs, Markov blankets, and blanket-family consistency."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .errors import AsymmetricFamily, IndexOutOfRange
from .graph import Dag, Edge, UndirectedGraph, build_graph
from .pek import Status, immoralize


@dataclass(frozen=True)
class MoralizationResult:
    moral_graph: UndirectedGraph
    fill_edges: frozenset[Edge]


def moralize(dag: Dag) -> MoralizationResult:
    """Join every non-adjacent pair of co-parents and drop directions."""
    skeleton = dag.skeleton()
    fills = set()
    for v in range(dag.n):
        for a, b in combinations(sorted(dag.parents[v]), 2):
            if not skeleton.has_edge(a, b):
                fills.add((a, b))
    return MoralizationResult(skeleton.with_edges(fills), frozenset(fills))


def markov_blanket(dag: Dag, u: int) -> frozenset[int]:
    """Parents, children and the children's other parents of ``u``."""
    dag._check(u)
    out = set(dag.parents[u]) | set(dag.children[u])
    for c in dag.children[u]:
        out |= dag.parents[c]
    out.discard(u)
    return frozenset(out)


@dataclass(frozen=True)
class BlanketFamily:
    """Blanket set per vertex ``0..n-1``."""

    n: int
    blankets: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.blankets) != self.n:
            raise ValueError(f"expected {self.n} blankets, got {len(self.blankets)}")
        for v, b in enumerate(self.blankets):
            if v in b:
                raise ValueError(f"vertex {v} is in its own blanket")
            for u in b:
                if not 0 <= u < self.n:
                    raise IndexOutOfRange(f"blanket of {v} names unknown vertex {u}")

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[int, Iterable[int]]) -> BlanketFamily:
        bl = [frozenset()] * n
        for v, b in mapping.items():
            if not 0 <= v < n:
                raise IndexOutOfRange(f"vertex {v} out of range for n={n}")
            bl[v] = frozenset(b)
        return cls(n, tuple(bl))

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.blankets[v]


def blanket_family_from_dag(dag: Dag) -> BlanketFamily:
    return BlanketFamily(dag.n, tuple(markov_blanket(dag, v) for v in range(dag.n)))


def neighbourhood_family(g: UndirectedGraph) -> BlanketFamily:
    return BlanketFamily(g.n, tuple(g._adj))


def check_symmetry(family: BlanketFamily) -> list[tuple[int, int]]:
    """Ordered pairs ``(u, v)`` with ``v`` in B(u) but ``u`` missing from B(v)."""
    return [(u, v) for u in range(family.n) for v in sorted(family[u]) if u not in family[v]]


def blanket_graph(family: BlanketFamily) -> UndirectedGraph:
    bad = check_symmetry(family)
    if bad:
        raise AsymmetricFamily(f"family is not symmetric, e.g. {bad[0]}")
    return build_graph(family.n, [(u, v) for u in range(family.n) for v in family[u] if u < v])


class Consistency(str, enum.Enum):
    CONSISTENT = "CONSISTENT"
    ASYMMETRIC = "ASYMMETRIC"
    INCONSISTENT = "INCONSISTENT"
    UNKNOWN = "UNKNOWN"


@dataclass
class ConsistencyVerdict:
    status: Consistency
    witness_dag: Dag | None = None
    violations: list[tuple[int, int]] | None = None
    evidence: UndirectedGraph | None = None  # stuck residual of the blanket graph


def check_consistency(family: BlanketFamily, budget: int | None = None) -> ConsistencyVerdict:
    """Is there a DAG whose Markov blankets are exactly ``family``?

    Asymmetric families are reported as such without a consistency verdict.
    Otherwise the blanket graph is checked for morality component by
    component, and a moral graph is oriented into a witness DAG.
    """
    from .poly import check

    bad = check_symmetry(family)
    if bad:
        return ConsistencyVerdict(Consistency.ASYMMETRIC, violations=bad)
    g = blanket_graph(family)
    verdict = check(g, budget=budget)
    if verdict.status is Status.NOT_MORAL:
        return ConsistencyVerdict(Consistency.INCONSISTENT, evidence=verdict.stuck_witness)
    if verdict.status is Status.UNKNOWN:
        return ConsistencyVerdict(Consistency.UNKNOWN)
    witness = immoralize(g, verdict.certificate)
    return ConsistencyVerdict(Consistency.CONSISTENT, witness_dag=witness)
