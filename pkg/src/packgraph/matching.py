"""Exact maximum-weight matchings.

The engine is the blossom (primal-dual with shrinking) implementation from
networkx, driven on an explicit edge list so results are stable across runs.
Size-constrained matchings go through the dummy-vertex reduction; a
brute-force enumerator serves as an independent differential oracle.
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional, Sequence

import networkx as nx

from .graph import Matching, WeightedCompleteGraph, make_matching

BRUTE_FORCE_CAP = 5_000_000


def max_weight_perfect_matching_matrix(w: Sequence[Sequence[int]]) -> list:
    """Maximum-weight perfect matching of a complete graph given as a square
    symmetric weight matrix.  Returns sorted (u, v) pairs with u < v."""
    n = len(w)
    if n % 2 != 0:
        raise ValueError("perfect matching needs an even vertex count")
    G = nx.Graph()
    G.add_nodes_from(range(n))
    for u in range(n):
        for v in range(u + 1, n):
            G.add_edge(u, v, weight=int(w[u][v]))
    mate = nx.max_weight_matching(G, maxcardinality=True)
    edges = sorted(tuple(sorted(e)) for e in mate)
    if len(edges) != n // 2:
        raise AssertionError("engine returned a non-perfect matching")
    return edges


def max_weight_perfect_matching(g: WeightedCompleteGraph) -> Matching:
    if g.n % 2 != 0:
        raise ValueError(f"n={g.n} is odd; no perfect matching")
    return make_matching(max_weight_perfect_matching_matrix(g.w))


def max_weight_matching_of_size(g: WeightedCompleteGraph, p: int) -> Matching:
    """Maximum-weight matching among matchings of cardinality exactly p.

    Adds n-2p auxiliary vertices joined to every real vertex with a uniform
    weight exceeding the sum of all real weights (auxiliary pairs get 0), takes
    a maximum-weight perfect matching of the enlarged graph and discards the
    auxiliary edges.  With non-negative weights the restriction is optimal
    among exact-size-p matchings.
    """
    if p < 0 or 2 * p > g.n:
        raise ValueError(f"infeasible matching size p={p} for n={g.n}")
    if p == 0:
        return Matching(())
    n, d = g.n, g.n - 2 * p
    if d == 0:
        return max_weight_perfect_matching(g)
    big = 1 + g.total_weight()
    size = n + d
    w = [[0] * size for _ in range(size)]
    for u in range(n):
        for v in range(u + 1, n):
            w[u][v] = w[v][u] = g.weight(u, v)
        for a in range(n, size):
            w[u][a] = w[a][u] = big
    edges = max_weight_perfect_matching_matrix(w)
    real = [e for e in edges if e[1] < n]
    if len(real) != p:
        raise AssertionError("dummy reduction produced wrong cardinality")
    return make_matching(real)


def brute_force_matching(
    g: WeightedCompleteGraph, p: int, cap: int = BRUTE_FORCE_CAP
) -> Matching:
    """Exhaustive maximum over all matchings of size exactly p."""
    if p < 0 or 2 * p > g.n:
        raise ValueError(f"infeasible matching size p={p} for n={g.n}")
    if _matching_count_estimate(g.n, p) > cap:
        raise ValueError("instance above brute-force cap")
    best_w = -1
    best: Optional[tuple] = None
    for verts in combinations(range(g.n), 2 * p):
        for edges in _pairings(list(verts)):
            tw = sum(g.weight(u, v) for u, v in edges)
            if tw > best_w:
                best_w = tw
                best = edges
    return make_matching(best if best is not None else ())


def _pairings(verts: list):
    if not verts:
        yield ()
        return
    u = verts[0]
    for i in range(1, len(verts)):
        v = verts[i]
        rest = verts[1:i] + verts[i + 1 :]
        for tail in _pairings(rest):
            yield ((u, v),) + tail


def _matching_count_estimate(n: int, p: int) -> int:
    # C(n, 2p) * (2p-1)!!
    from math import comb

    dfact = 1
    for x in range(2 * p - 1, 0, -2):
        dfact *= x
    return comb(n, 2 * p) * dfact
