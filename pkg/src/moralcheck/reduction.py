"""3-CNF to morality reduction with maximum degree 5, plus a small SAT oracle.

The gadget tables below are the single source for the construction: the
variable gadget is two mirrored 16-vertex halves ``v^0..v^15`` and
``~v^0..~v^15``; a clause gadget is a K4 on ``F^18..F^21`` with three
envelope graphs hanging off it, one per literal; the auxiliary gadget is an
envelope ``S^0..S^4`` plus the chain ``S^5 - S^6 - S^7_1 - ... - S^7_t``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DegreeOverflow, MalformedDimacs, NotThreeCnf
from .graph import UndirectedGraph, build_graph, connected_components

# one half of a variable gadget, on local indices 0..15
VARIABLE_HALF_EDGES = (
    (0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4), (3, 5), (4, 6), (5, 6), (5, 12),
    (7, 8), (7, 10), (8, 10), (8, 9), (8, 11), (9, 11), (10, 12), (10, 13), (10, 11),
    (12, 13), (13, 14), (11, 14), (14, 15),
)
# edges between the positive and negative halves, as (j, j)
VARIABLE_CROSS = (1, 8)

CLAUSE_EDGES = (
    (0, 3), (3, 6), (3, 7), (6, 7), (6, 12), (7, 13), (12, 13), (12, 18),
    (1, 4), (4, 8), (4, 9), (8, 9), (8, 14), (9, 15), (14, 15), (14, 19),
    (2, 5), (5, 10), (5, 11), (10, 11), (10, 16), (11, 17), (16, 17), (16, 20),
    (18, 19), (18, 20), (18, 21), (19, 20), (19, 21), (20, 21),
)
AUX_ENVELOPE_EDGES = ((0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 4))

VARIABLE_SIZE = 32
CLAUSE_SIZE = 22


@dataclass(frozen=True)
class CnfFormula:
    """3-CNF over variables ``1..num_vars``; literals are signed ints (DIMACS)."""

    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            if len(c) != 3:
                raise NotThreeCnf(f"clause {c} does not have exactly 3 literals")
            if len({abs(l) for l in c}) != 3:
                raise NotThreeCnf(f"clause {c} repeats a variable")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise NotThreeCnf(f"literal {lit} out of range for {self.num_vars} variables")

    def evaluate(self, assignment) -> bool:
        return all(any(assignment[abs(l)] == (l > 0) for l in c) for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    header = None
    lits: list[int] = []
    clauses = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise MalformedDimacs(f"line {lineno}: bad problem line {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise MalformedDimacs(f"line {lineno}: bad problem line {line!r}") from None
            continue
        if header is None:
            raise MalformedDimacs(f"line {lineno}: clause before the problem line")
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise MalformedDimacs(f"line {lineno}: non-integer literal in {line!r}") from None
        for x in nums:
            if x == 0:
                clauses.append(tuple(lits))
                lits = []
            else:
                lits.append(x)
    if header is None:
        raise MalformedDimacs("missing problem line")
    if lits:
        raise MalformedDimacs("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise MalformedDimacs(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


# -- gadgets -----------------------------------------------------------------

def build_variable_gadget(i: int):
    """Labels and edges (as label pairs) of the gadget for variable ``i``."""
    pos = [f"v{i}^{j}" for j in range(16)]
    neg = [f"~v{i}^{j}" for j in range(16)]
    edges = [(pos[a], pos[b]) for a, b in VARIABLE_HALF_EDGES]
    edges += [(neg[a], neg[b]) for a, b in VARIABLE_HALF_EDGES]
    edges += [(pos[j], neg[j]) for j in VARIABLE_CROSS]
    return pos + neg, edges


def build_clause_gadget(k: int):
    labels = [f"F{k}^{l}" for l in range(CLAUSE_SIZE)]
    return labels, [(labels[a], labels[b]) for a, b in CLAUSE_EDGES]


def build_auxiliary_gadget(t: int):
    labels = [f"S^{j}" for j in range(7)] + [f"S^7_{i}" for i in range(1, t + 1)]
    edges = [(labels[a], labels[b]) for a, b in AUX_ENVELOPE_EDGES]
    chain = labels[5:]
    edges += list(zip(chain, chain[1:]))
    return labels, edges


@dataclass(frozen=True)
class Attachment:
    clause: int
    position: int
    anchors: tuple[str, ...]


@dataclass
class ReductionLayout:
    graph: UndirectedGraph
    label_of: dict[int, str]
    attachment_log: dict[int, list[Attachment]] = field(default_factory=dict)

    def vertex(self, label: str) -> int:
        return self._ids[label]

    def __post_init__(self):
        self._ids = {lab: v for v, lab in self.label_of.items()}


def expected_size(num_vars: int, num_clauses: int) -> int:
    return 32 * num_vars + 23 * num_clauses + 7


def reduce(cnf: CnfFormula) -> ReductionLayout:
    """Build the maximum-degree-5 graph that is moral iff ``cnf`` is satisfiable."""
    n, t = cnf.num_vars, len(cnf.clauses)
    labels: list[str] = []
    edges: list[tuple[str, str]] = []
    for i in range(1, n + 1):
        ls, es = build_variable_gadget(i)
        labels += ls
        edges += es
    for k in range(1, t + 1):
        ls, es = build_clause_gadget(k)
        labels += ls
        edges += es
    ls, es = build_auxiliary_gadget(t)
    labels += ls
    edges += es

    for i in range(1, n):
        edges.append((f"~v{i}^0", f"v{i + 1}^0"))
    if n:
        edges.append(("S^0", "v1^0"))
        edges.append(("S^5", f"~v{n}^0"))
    for k in range(1, t + 1):
        edges.append((f"S^7_{k}", f"F{k}^21"))

    # literal ports: the first occurrence of a literal hangs off its v^15 vertex,
    # later ones hang off the previous occurrence's port and envelope roof
    degree: dict[str, int] = {}
    for a, b in edges:
        degree[a] = degree.get(a, 0) + 1
        degree[b] = degree.get(b, 0) + 1
    last: dict[int, tuple[int, int]] = {}
    log: dict[int, list[Attachment]] = {}
    for k, clause in enumerate(cnf.clauses, start=1):
        for l, lit in enumerate(clause):
            port = f"F{k}^{l}"
            tip = f"v{lit}^15" if lit > 0 else f"~v{-lit}^15"
            if degree[tip] == 1:
                anchors = (tip,)
            else:
                p, q = last[lit]
                anchors = (f"F{p}^{q}", f"F{p}^{q + 3}")
            for a in anchors:
                edges.append((port, a))
                degree[a] += 1
                degree[port] += 1
            last[lit] = (k, l)
            log.setdefault(lit, []).append(Attachment(k, l, anchors))

    ids = {lab: v for v, lab in enumerate(labels)}
    g = build_graph(len(labels), [(ids[a], ids[b]) for a, b in edges], labels=labels)

    if len(g) != expected_size(n, t):
        raise RuntimeError(f"reduction built {len(g)} vertices, expected {expected_size(n, t)}")
    if g.max_degree() > 5:
        worst = max(g.vertices, key=g.degree)
        raise DegreeOverflow(f"vertex {labels[worst]} has degree {g.degree(worst)}")
    if len(connected_components(g)) != 1:
        raise RuntimeError("reduction graph is not connected")
    return ReductionLayout(g, dict(enumerate(labels)), log)


# -- SAT oracle --------------------------------------------------------------

def sat_solve(cnf: CnfFormula) -> tuple[bool, dict[int, bool] | None]:
    """DPLL with unit propagation. Returns ``(satisfiable, assignment)``."""
    clauses = [list(c) for c in cnf.clauses]

    def propagate(cls, assign):
        while True:
            unit = None
            out = []
            for c in cls:
                if any(assign.get(abs(l)) == (l > 0) for l in c):
                    continue
                rest = [l for l in c if abs(l) not in assign]
                if not rest:
                    return None
                if len(rest) == 1 and unit is None:
                    unit = rest[0]
                out.append(rest)
            if unit is None:
                return out
            assign[abs(unit)] = unit > 0
            cls = out

    def dpll(cls, assign):
        cls = propagate(cls, assign)
        if cls is None:
            return None
        if not cls:
            return assign
        var = abs(cls[0][0])
        for value in (True, False):
            trial = dict(assign)
            trial[var] = value
            found = dpll(cls, trial)
            if found is not None:
                return found
        return None

    result = dpll(clauses, {})
    if result is None:
        return False, None
    full = {v: result.get(v, False) for v in range(1, cnf.num_vars + 1)}
    return True, full
