"""Weight-class reduction {1,2} -> {0,1} and the 9/11 wrapper for 3CP."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .graph import (
    KCyclePacking,
    KPathPacking,
    WeightedCompleteGraph,
    packing_weight,
    validate_packing,
)


@dataclass(frozen=True)
class PluggableSolver:
    """A packing solver with a claimed approximation ratio on {0,1} graphs."""

    kind: str  # "cycle" | "path"
    k: int
    solve: Callable[[WeightedCompleteGraph], object]
    claimed_ratio: Fraction = Fraction(1)


def _require_one_two(g: WeightedCompleteGraph) -> None:
    off = ~np.eye(g.n, dtype=bool)
    if not np.isin(g.w[off], (1, 2)).all():
        raise ValueError("weights must all be in {1, 2}")


def lift_12_to_01(g: WeightedCompleteGraph) -> WeightedCompleteGraph:
    """Subtract 1 from every edge weight.

    Packings keep their structure; a k-cycle packing loses exactly n weight
    and a k-path packing exactly n - n/k (one unit per edge).
    """
    _require_one_two(g)
    w = g.w - 1
    np.fill_diagonal(w, 0)
    return WeightedCompleteGraph(n=g.n, w=w, denom=g.denom, class_tag="zero_one")


def reduction_offset(n: int, k: int, kind: str) -> int:
    """Weight shift between a packing on the {1,2} graph and its lift."""
    return n if kind == "cycle" else n - n // k


def solve_12_via_01(g: WeightedCompleteGraph, solver: PluggableSolver):
    """Lift, run the {0,1} solver, reinterpret the packing on g.

    With a rho-approximate plug the result is (1+rho)/2-approximate on g.
    """
    lifted = lift_12_to_01(g)
    packing = solver.solve(lifted)
    err = validate_packing(lifted, packing, solver.k, solver.kind)
    if err:
        raise ValueError(f"plugged solver returned an invalid packing: {err}")
    return packing  # identical structure is valid on g as well


def three_cp_9_11(
    g: WeightedCompleteGraph, zero_one_solver: PluggableSolver
) -> KCyclePacking:
    """3CP on {1,2} graphs through the {0,1} reduction.

    The 9/11 guarantee needs a plug meeting the known {0,1} 3CP lower
    bound; an exact plug dominates it.
    """
    if g.n % 3 != 0:
        raise ValueError(f"n={g.n} not divisible by 3")
    if zero_one_solver.kind != "cycle" or zero_one_solver.k != 3:
        raise ValueError("plug must solve 3CP")
    return solve_12_via_01(g, zero_one_solver)


def packing_weights_both(g: WeightedCompleteGraph, lifted, packing):
    """(weight on g, weight on the lifted graph) for the same packing."""
    return packing_weight(g, packing), packing_weight(lifted, packing)
