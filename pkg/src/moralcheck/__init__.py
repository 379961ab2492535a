"""Decide whether undirected graphs are moral, with certificates.

A graph is moral when it is the moral graph of some DAG.  The package offers
polynomial checks for maximum degree up to 4, an exact budgeted search for
everything else, witness DAG construction, Markov-blanket consistency, and
a 3-CNF reduction showing the degree-5 case is hard.
"""
from .errors import (
    AsymmetricFamily,
    BudgetRequired,
    CyclicInput,
    DegreeOverflow,
    DegreeTooHigh,
    ExcessNotInNeighbourhood,
    IndexOutOfRange,
    InvalidKit,
    MalformedDimacs,
    MalformedKit,
    MoralityError,
    NotDegreeTwoSimplicial,
    NotThreeCnf,
    ParseError,
    SelfLoop,
)
from .graph import (
    Dag,
    UndirectedGraph,
    build_graph,
    connected_components,
    deficiency,
    distance,
    edge,
    is_simplicial,
    remove_vertex_and_edges,
    simplicial_vertices,
)
from .moralize import (
    BlanketFamily,
    Consistency,
    ConsistencyVerdict,
    MoralizationResult,
    blanket_family_from_dag,
    blanket_graph,
    check_consistency,
    check_symmetry,
    markov_blanket,
    moralize,
    neighbourhood_family,
)
from .pek import (
    EliminationKit,
    MoralityVerdict,
    SearchStats,
    Status,
    TraceStep,
    check_morality_exact,
    first_invalid_step,
    immoralize,
    validate_partial_pek,
    validate_pek,
)
from .poly import (
    TriangleStack,
    check,
    check_deg3,
    check_deg4,
    check_deg_le2,
    detect_triangle_stack,
    greedy_elimination,
)
from .reduction import CnfFormula, ReductionLayout, expected_size, parse_dimacs, reduce, sat_solve
