"""k-cycle packing algorithms.

Covers the TSP-splitting constructions (tour -> k-paths -> k-cycles), the
matching-based construction for odd k, and the two contraction-based
algorithms for k = 4 (general and metric).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .graph import (
    HamiltonianCycle,
    KCyclePacking,
    KPathPacking,
    Matching,
    WeightedCompleteGraph,
    cycle_weight,
    is_metric,
    make_matching,
    matching_weight,
)
from .matching import (
    max_weight_matching_of_size,
    max_weight_perfect_matching,
    max_weight_perfect_matching_matrix,
)
from .tsp import exact_max_tsp, split_cycle_best_offset

TspSolver = Callable[[WeightedCompleteGraph], HamiltonianCycle]

EXHAUSTIVE_ORIENTATION_CAP = 12


@dataclass(frozen=True)
class EdgeGroupPlan:
    """Partition of a size-p matching into groups plus isolated vertices.

    ``groups[i]`` is a list of matching edges; ``isolated[i]`` is the vertex
    (int, cycle construction) or ordered vertex pair (path construction)
    spliced into group i.
    """

    groups: tuple
    isolated: tuple

    def matching(self) -> Matching:
        return make_matching(e for grp in self.groups for e in grp)


def _warn_if_not_metric(g: WeightedCompleteGraph, algo: str) -> None:
    # ratio guarantees, not validity, depend on metricity, so warn not abort
    if g.class_tag in ("metric", "one_two"):
        return
    ok, triple = is_metric(g)
    if not ok:
        warnings.warn(
            f"{algo}: input is not metric (violating triple {triple}); "
            "the approximation guarantee does not apply",
            stacklevel=3,
        )


def complete_paths(g: WeightedCompleteGraph, P: KPathPacking) -> KCyclePacking:
    """Close each path v1..vk into the cycle v1..vk v1."""
    return KCyclePacking(k=P.k, cycles=tuple(P.paths))


def cycle_candidates_from_path(path: Sequence[int]):
    """The k-1 closures of a path: C_j = v1..vj vk v(k-1)..v(j+1) v1."""
    k = len(path)
    for j in range(1, k):
        yield tuple(path[:j]) + tuple(reversed(path[j:]))


def best_cycle_from_path(g: WeightedCompleteGraph, path: Sequence[int]) -> tuple:
    """Heaviest of the k-1 closures; ties to the smallest index."""
    best = None
    best_w = -1
    for cand in cycle_candidates_from_path(path):
        cw = cycle_weight(g, cand)
        if cw > best_w:
            best_w = cw
            best = cand
    return best


def alg1_metric_kcp(
    g: WeightedCompleteGraph, k: int, tsp_solver: TspSolver = exact_max_tsp
) -> KCyclePacking:
    """Tour -> plain best-offset split -> plain completion.

    Output weight is at least (1 - 1/k) of the tour weight on every input.
    """
    if g.n % k != 0:
        raise ValueError(f"n={g.n} not divisible by k={k}")
    _warn_if_not_metric(g, "alg1")
    H = tsp_solver(g)
    P = split_cycle_best_offset(g, H, k, objective="plain")
    return complete_paths(g, P)


def alg2_metric_kcp_even(
    g: WeightedCompleteGraph, k: int, tsp_solver: TspSolver = exact_max_tsp
) -> KCyclePacking:
    """Tour -> pairing-aware split -> best closure per path (even k).

    On metric inputs the output weight is at least
    (1 - 1/k + 1/(k(k-1))) of the tour weight.
    """
    if k % 2 != 0:
        raise ValueError("alg2 needs even k")
    if g.n % k != 0:
        raise ValueError(f"n={g.n} not divisible by k={k}")
    _warn_if_not_metric(g, "alg2")
    H = tsp_solver(g)
    P = split_cycle_best_offset(g, H, k, objective="alg2")
    cycles = tuple(best_cycle_from_path(g, p) for p in P.paths)
    return KCyclePacking(k=k, cycles=cycles)


# ---------------------------------------------------------------------------
# Alg.3: matching-based construction for odd k


def default_plan(
    g: WeightedCompleteGraph, matching: Matching, groups: int, iso_per_group: int
) -> EdgeGroupPlan:
    """Deterministic plan: edges sorted by descending weight fill the groups
    round-robin; isolated vertices are assigned in ascending id order."""
    edges = sorted(matching.edges, key=lambda e: (-g.weight(*e), e))
    grp = [[] for _ in range(groups)]
    for i, e in enumerate(edges):
        grp[i % groups].append(e)
    iso = sorted(set(range(g.n)) - matching.covered())
    if len(iso) != groups * iso_per_group:
        raise ValueError("isolated vertex count mismatch")
    if iso_per_group == 1:
        assigned = tuple(iso)
    else:
        assigned = tuple(
            tuple(iso[i * iso_per_group : (i + 1) * iso_per_group])
            for i in range(groups)
        )
    return EdgeGroupPlan(groups=tuple(tuple(x) for x in grp), isolated=assigned)


def _order_group_edges(g: WeightedCompleteGraph, edges: Sequence[tuple]) -> list:
    """Two heaviest edges at positions 1 and m, the rest descending between."""
    s = sorted(edges, key=lambda e: (-g.weight(*e), e))
    if len(s) <= 2:
        return list(s)
    return [s[0]] + s[2:] + [s[1]]


def _chain_weight(g, ends: Sequence[int], oriented: Sequence[tuple]) -> int:
    """Weight of ends[0] t1 h1 ... tm hm ends[-1] including the edges of the
    oriented chain itself.  For a cycle pass ends = (v, v)."""
    total = 0
    prev = ends[0]
    for t, h in oriented:
        total += g.weight(prev, t) + g.weight(t, h)
        prev = h
    total += g.weight(prev, ends[1])
    return total


def _best_orientation(
    g: WeightedCompleteGraph, ends: Sequence[int], edges: Sequence[tuple]
) -> list:
    """Orient each group edge to maximize the spliced chain weight.

    Exhaustive over 2^m for m <= EXHAUSTIVE_ORIENTATION_CAP, otherwise the
    exact conditional-expectation greedy; both dominate the uniform-random
    expectation, so the (3m+1)/(2m) per-group bound is preserved.
    """
    m = len(edges)
    if m <= EXHAUSTIVE_ORIENTATION_CAP:
        best = None
        best_w = -1
        for bits in range(1 << m):
            oriented = [
                (e[1], e[0]) if (bits >> i) & 1 else e for i, e in enumerate(edges)
            ]
            tw = _chain_weight(g, ends, oriented)
            if tw > best_w:
                best_w = tw
                best = oriented
        return best
    return _conditional_expectation_orientation(g, ends, edges)


def _conditional_expectation_orientation(g, ends, edges) -> list:
    # fix orientations left to right, each time keeping the choice with the
    # larger conditional expectation (kept exact: values are scaled by 4)
    m = len(edges)
    flips: list = [None] * m

    def _tail(i):
        return None if flips[i] is None else edges[i][1 if flips[i] else 0]

    def _head(i):
        return None if flips[i] is None else edges[i][0 if flips[i] else 1]

    def exp4() -> int:
        total = 0
        for i in range(m + 1):
            if i == 0:
                a_opts = [ends[0]]
            else:
                h = _head(i - 1)
                a_opts = [h] if h is not None else list(edges[i - 1])
            if i == m:
                b_opts = [ends[1]]
            else:
                t = _tail(i)
                b_opts = [t] if t is not None else list(edges[i])
            s = sum(g.weight(a, b) for a in a_opts for b in b_opts)
            total += s * (4 // (len(a_opts) * len(b_opts)))
        return total

    for i in range(m):
        flips[i] = False
        keep = exp4()
        flips[i] = True
        flip = exp4()
        flips[i] = flip > keep
    return [(e[1], e[0]) if f else e for e, f in zip(edges, flips)]


def alg3_matching_kcp_odd(
    g: WeightedCompleteGraph, k: int, plan: Optional[EdgeGroupPlan] = None
) -> KCyclePacking:
    """Matching-based k-cycle packing for odd k.

    Takes a maximum-weight matching of size (n/k)(k-1)/2, splices one isolated
    vertex into each group of (k-1)/2 edges, and orients the edges to maximize
    each group's cycle.  A plan override reproduces adversarial fixtures; it
    must use a matching of optimal weight.
    """
    if k % 2 == 0 or k < 3:
        raise ValueError("alg3 needs odd k >= 3")
    if g.n % k != 0:
        raise ValueError(f"n={g.n} not divisible by k={k}")
    _warn_if_not_metric(g, "alg3")
    groups = g.n // k
    m = (k - 1) // 2
    p = groups * m
    opt_matching = max_weight_matching_of_size(g, p)
    if plan is None:
        plan = default_plan(g, opt_matching, groups, iso_per_group=1)
    else:
        got = plan.matching()
        if got.size != p or matching_weight(g, got) != matching_weight(g, opt_matching):
            raise ValueError("plan inconsistent with the maximum-weight matching")
    cycles = []
    for edges, v in zip(plan.groups, plan.isolated):
        ordered = _order_group_edges(g, edges)
        oriented = _best_orientation(g, (v, v), ordered)
        cyc = [v]
        for t, h in oriented:
            cyc.extend((t, h))
        cycles.append(tuple(cyc))
    return KCyclePacking(k=k, cycles=tuple(cycles))


# ---------------------------------------------------------------------------
# k = 4 contraction algorithms


def _contract_best_connector(g: WeightedCompleteGraph, mstar: Matching):
    """Collapse each matching edge to a super-vertex; between two
    super-vertices keep the heaviest of the four connecting edges."""
    ed = mstar.edges
    s = len(ed)
    wmat = [[0] * s for _ in range(s)]
    conn = {}
    for i in range(s):
        for j in range(i + 1, s):
            best = None
            best_w = -1
            for x in ed[i]:
                for y in ed[j]:
                    wxy = g.weight(x, y)
                    if wxy > best_w:
                        best_w = wxy
                        best = (x, y)
            wmat[i][j] = wmat[j][i] = best_w
            conn[(i, j)] = best
    return wmat, conn


def alg6_general_4cp(
    g: WeightedCompleteGraph, matching_override: Optional[Matching] = None
):
    """Contraction-based general 4CP.

    Returns (cycle packing, the intermediate 4-path packing P4); the path
    packing weight equals w(M*) + w(contracted matching).
    """
    if g.n % 4 != 0:
        raise ValueError(f"n={g.n} not divisible by 4")
    mstar = matching_override or max_weight_perfect_matching(g)
    if matching_override is not None and 2 * mstar.size != g.n:
        raise ValueError("matching override is not perfect")
    wmat, conn = _contract_best_connector(g, mstar)
    super_match = max_weight_perfect_matching_matrix(wmat)
    paths = []
    for i, j in super_match:
        x, y = conn[(i, j)]
        u = next(z for z in mstar.edges[i] if z != x)
        z = next(t for t in mstar.edges[j] if t != y)
        paths.append((u, x, y, z))
    P4 = KPathPacking(k=4, paths=tuple(paths))
    return complete_paths(g, P4), P4


def alg7_metric_4cp(
    g: WeightedCompleteGraph, matching_override: Optional[Matching] = None
) -> KCyclePacking:
    """Contraction-based metric 4CP.

    Between two matching edges ux and yz the two super-edges are the pairs
    {xy, zu} and {xz, yu}; keeping the heavier one and matching the
    super-vertices yields the maximum-weight 4-cycle packing containing every
    edge of M*.
    """
    if g.n % 4 != 0:
        raise ValueError(f"n={g.n} not divisible by 4")
    _warn_if_not_metric(g, "alg7")
    mstar = matching_override or max_weight_perfect_matching(g)
    if matching_override is not None and 2 * mstar.size != g.n:
        raise ValueError("matching override is not perfect")
    ed = mstar.edges
    s = len(ed)
    wmat = [[0] * s for _ in range(s)]
    config = {}
    for i in range(s):
        u, x = ed[i]
        for j in range(i + 1, s):
            y, z = ed[j]
            c1 = g.weight(x, y) + g.weight(z, u)  # cycle u x y z u
            c2 = g.weight(x, z) + g.weight(y, u)  # cycle u x z y u
            if c1 >= c2:
                wmat[i][j] = wmat[j][i] = c1
                config[(i, j)] = (u, x, y, z)
            else:
                wmat[i][j] = wmat[j][i] = c2
                config[(i, j)] = (u, x, z, y)
    super_match = max_weight_perfect_matching_matrix(wmat)
    cycles = tuple(config[(i, j)] for i, j in super_match)
    return KCyclePacking(k=4, cycles=cycles)
