"""Reference graphs and random generators shared by the tests.

Vertex ``v_k`` of a drawing is id ``k - 1``.
"""
import itertools
import random

from moralcheck import Dag, EliminationKit, build_graph, is_simplicial


def one_based(n, pairs):
    return build_graph(n, [(a - 1, b - 1) for a, b in pairs])


# house-shaped graph: 4-cycle v1 v2 v4 v3 with roof v5 over v3 v4
ENVELOPE_EDGES = [(1, 2), (1, 3), (2, 4), (3, 4), (3, 5), (4, 5)]
ENVELOPE = one_based(5, ENVELOPE_EDGES)
ENVELOPE_DAG = Dag(5, [(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)])
# 4-cycle with a pendant on v3
CYCLE_WITH_LEAF = one_based(5, [(1, 2), (1, 3), (2, 4), (3, 4), (3, 5)])
# the only excess needed: v3v4 when v5 goes first
ENVELOPE_KIT_ORDER = (4, 2, 3, 0, 1)
ENVELOPE_KIT_EXCESS = {4: frozenset({(2, 3)})}

C4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
K5 = build_graph(5, itertools.combinations(range(5), 2))

_TWO_STACKS = [
    (1, 2), (1, 4), (3, 5), (3, 2), (4, 5), (4, 2), (5, 2), (4, 6), (6, 7), (5, 7),
    (8, 9), (8, 11), (10, 12), (10, 9), (11, 12), (11, 9), (12, 9), (7, 13), (13, 12),
]
# two degree-4 pieces joined through v3-v8 (a) or v3-v11 (b)
STACKS_A = one_based(13, _TWO_STACKS + [(8, 3)])
STACKS_B = one_based(13, _TWO_STACKS + [(11, 3)])
# the 4-cycle a naive greedy run strands on both graphs
STACKS_NAIVE_STUCK = {3, 4, 5, 6}

FOUR_CLAUSE_FORMULA = ((1, 2, 3), (-1, -2, 3), (-1, -2, -3), (-1, 2, -3))


def random_graph(rng: random.Random, n: int, p: float):
    return build_graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def random_dag(rng: random.Random, n: int, p: float) -> Dag:
    order = list(range(n))
    rng.shuffle(order)
    arcs = [(order[i], order[j]) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
    return Dag(n, arcs)


def random_bounded_graph(rng: random.Random, n: int, max_deg: int, tries: int):
    """Random graph with every degree at most ``max_deg``."""
    deg = [0] * n
    es = set()
    for _ in range(tries):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v or deg[u] >= max_deg or deg[v] >= max_deg:
            continue
        e = (min(u, v), max(u, v))
        if e not in es:
            es.add(e)
            deg[u] += 1
            deg[v] += 1
    return build_graph(n, es)


def connected_graphs(n: int):
    """Every connected labeled graph on ``n`` vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        es = [p for i, p in enumerate(pairs) if mask >> i & 1]
        if len(es) < n - 1:
            continue
        seen = {0}
        stack = [0]
        adj = {v: [] for v in range(n)}
        for a, b in es:
            adj[a].append(b)
            adj[b].append(a)
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) == n:
            yield build_graph(n, es)


def grow_moral_graph(rng: random.Random, n: int, max_deg: int, span: int = 3):
    """Moral graph built by running an elimination kit backwards.

    Each new vertex joins up to ``span`` earlier vertices and turns them into
    a clique (the added pairs are that vertex's excess), so the result is
    moral by construction.  Degrees stay at most ``max_deg``.
    """
    adj = [set() for _ in range(n)]
    for x in range(1, n):
        window = list(range(max(0, x - 12), x))
        rng.shuffle(window)
        chosen = []
        pending = {}
        size = rng.randint(1, span)
        for u in window:
            if len(chosen) == size:
                break
            fresh = [w for w in chosen if w not in adj[u]]
            if len(adj[u]) + 1 + len(fresh) > max_deg:
                continue
            if any(len(adj[w]) + pending[w] + 1 > max_deg for w in fresh):
                continue
            for w in fresh:
                pending[w] += 1
            pending[u] = 1 + len(fresh)
            chosen.append(u)
        for i, u in enumerate(chosen):
            adj[u].add(x)
            adj[x].add(u)
            for w in chosen[i + 1:]:
                adj[u].add(w)
                adj[w].add(u)
    return build_graph(n, [(u, v) for u in range(n) for v in adj[u] if u < v])


def bounded_connected_graphs(n: int, max_deg: int):
    """Edge lists of every connected labeled graph on ``n`` vertices with all
    degrees at most ``max_deg``."""
    pairs = list(itertools.combinations(range(n), 2))
    deg = [0] * n
    chosen = []
    full = (1 << n) - 1

    def connected():
        nb = [0] * n
        for a, b in chosen:
            nb[a] |= 1 << b
            nb[b] |= 1 << a
        seen = frontier = 1
        while frontier:
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                nxt |= nb[low.bit_length() - 1]
                m ^= low
            frontier = nxt & ~seen
            seen |= frontier
        return seen == full

    def rec(i):
        if i == len(pairs):
            if len(chosen) >= n - 1 and connected():
                yield list(chosen)
            return
        yield from rec(i + 1)
        a, b = pairs[i]
        if deg[a] < max_deg and deg[b] < max_deg:
            deg[a] += 1
            deg[b] += 1
            chosen.append((a, b))
            yield from rec(i + 1)
            chosen.pop()
            deg[a] -= 1
            deg[b] -= 1

    yield from rec(0)


def all_peks(g):
    """Brute force: every (ordering, excess) pair that eliminates ``g``."""
    found = []

    def rec(cur, prefix):
        if len(cur) == 0:
            found.append(EliminationKit.from_steps(prefix))
            return
        for x in cur.vertices:
            if not is_simplicial(cur, x):
                continue
            nes = cur.neighbourhood_edges(x)
            for k in range(len(nes) + 1):
                for sub in itertools.combinations(nes, k):
                    rec(cur.remove_vertex_and_edges(x, sub), prefix + [(x, sub)])

    rec(g, [])
    return found
