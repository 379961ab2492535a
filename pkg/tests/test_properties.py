import itertools
import random

from hypothesis import given, settings, strategies as st

from moralcheck import (
    build_graph,
    check,
    check_deg4,
    check_morality_exact,
    immoralize,
    moralize,
    simplicial_vertices,
    validate_pek,
)
from moralcheck.formats import format_graph, parse_graph
from samples import random_bounded_graph


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return build_graph(n, chosen)


@st.composite
def bounded_graphs(draw, max_n=9, max_deg=4):
    g = draw(graphs(max_n))
    keep = []
    deg = [0] * g.n
    for u, v in g.edges():
        if deg[u] < max_deg and deg[v] < max_deg:
            keep.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return build_graph(g.n, keep)


@settings(max_examples=300, deadline=None)
@given(graphs())
def test_dispatcher_matches_reference_search(g):
    fast = check(g)
    slow = check_morality_exact(g)
    assert fast.status is slow.status
    if fast.is_moral:
        assert validate_pek(g, fast.certificate)
        assert moralize(immoralize(g, fast.certificate)).moral_graph == g
    else:
        assert simplicial_vertices(fast.stuck_witness) == [] or fast.stuck_witness.max_degree() <= 2


@settings(max_examples=200, deadline=None)
@given(graphs(), st.randoms(use_true_random=False))
def test_status_survives_relabelling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert check(g).status is check(g.relabel(perm)).status


@settings(max_examples=200, deadline=None)
@given(graphs(7))
def test_any_simplicial_vertex_can_start(g):
    if not check_morality_exact(g).is_moral:
        return
    for x in simplicial_vertices(g):
        v = check_morality_exact(g, first=x)
        assert v.is_moral and v.certificate.ordering[0] == x


@settings(max_examples=200, deadline=None)
@given(bounded_graphs())
def test_trace_replays_to_certificate(g):
    v = check_deg4(g)
    removed = [x for step in v.trace for x in step.removed]
    if v.is_moral:
        assert removed == list(v.certificate.ordering)
        edges = [e for step in v.trace for e in step.edges]
        assert sorted(edges) == sorted(v.certificate.all_excess_edges())
    else:
        assert set(removed).isdisjoint(v.stuck_witness.vertices)


@settings(max_examples=150, deadline=None)
@given(graphs(6), graphs(6))
def test_disjoint_union_is_conjunction(a, b):
    shifted = [(u + a.n, v + a.n) for u, v in b.edges()]
    union = build_graph(a.n + b.n, a.edges() + shifted)
    both = check(a).is_moral and check(b).is_moral
    assert check(union).is_moral == both


@settings(max_examples=200, deadline=None)
@given(graphs(10))
def test_graph_text_round_trip(g):
    assert parse_graph(format_graph(g)) == g


def random_ktree(rng, n, k):
    es = list(itertools.combinations(range(k + 1), 2))
    cliques = [tuple(range(k + 1))]
    for v in range(k + 1, n):
        base = rng.choice(cliques)
        keep = rng.sample(base, k)
        es += [(u, v) for u in keep]
        cliques.append(tuple(keep) + (v,))
    return build_graph(n, es)


def test_chordal_graphs_are_moral():
    rng = random.Random(11)
    for _ in range(500):
        k = rng.randint(1, 3)
        g = random_ktree(rng, rng.randint(k + 1, 30), k)
        v = check(g, budget=10**5)
        assert v.is_moral and validate_pek(g, v.certificate)


def test_greedy_checkers_match_reference_on_random_graphs():
    rng = random.Random(12)
    for _ in range(20_000):
        n = rng.randint(1, 10)
        g = random_bounded_graph(rng, n, rng.choice((3, 4)), rng.randint(0, 3 * n))
        assert check_deg4(g).status is check_morality_exact(g).status, g.edges()

