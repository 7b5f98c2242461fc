"""Complete weighted graphs, packing structures, instance I/O and generation.

Weights are stored as exact integers.  An instance may carry a denominator
(``denom``) so that rational weights are represented as ``w / denom``; every
algorithm and oracle works on the scaled integers, so all inequalities are
checked exactly with no floating point involved.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

WEIGHT_CLASSES = ("general", "metric", "zero_one", "one_two", "unknown")


class FormatError(ValueError):
    """Malformed packgraph document."""


class PackingError(ValueError):
    """A packing violates its structural invariants."""


@dataclass(frozen=True)
class WeightedCompleteGraph:
    """Symmetric non-negative integer weights on all vertex pairs.

    ``w`` is an ``n x n`` numpy int64 array with zero diagonal.  Instances are
    immutable after construction and safe to share between workers.
    """

    n: int
    w: np.ndarray
    denom: int = 1
    class_tag: str = "general"

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"need at least 3 vertices, got {self.n}")
        if self.w.shape != (self.n, self.n):
            raise ValueError("weight matrix shape mismatch")
        if (self.w < 0).any():
            raise ValueError("negative weight")
        if np.diagonal(self.w).any():
            raise ValueError("self-loop weight must be zero")
        if not (self.w == self.w.T).all():
            raise ValueError("weight matrix not symmetric")
        if self.denom < 1:
            raise ValueError("denominator must be positive")
        if self.class_tag not in WEIGHT_CLASSES:
            raise ValueError(f"unknown weight class {self.class_tag!r}")

    def weight(self, u: int, v: int) -> int:
        """Scaled integer weight of edge uv."""
        return int(self.w[u, v])

    def rational_weight(self, u: int, v: int) -> Fraction:
        return Fraction(int(self.w[u, v]), self.denom)

    def total_weight(self) -> int:
        return int(self.w.sum()) // 2

    def vertices(self) -> range:
        return range(self.n)


@dataclass(frozen=True)
class HamiltonianCycle:
    order: tuple

    def __post_init__(self):
        if len(set(self.order)) != len(self.order):
            raise PackingError("tour repeats a vertex")


@dataclass(frozen=True)
class Matching:
    edges: tuple

    @property
    def size(self) -> int:
        return len(self.edges)

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise PackingError(f"self-loop {u}{v} in matching")
            if u in seen or v in seen:
                raise PackingError("matching edges share a vertex")
            seen.add(u)
            seen.add(v)

    def covered(self) -> set:
        return {x for e in self.edges for x in e}


def make_matching(edges: Iterable[Sequence[int]]) -> Matching:
    """Normalize edges to sorted (u < v) tuples, sorted overall."""
    return Matching(tuple(sorted(tuple(sorted(e)) for e in edges)))


@dataclass(frozen=True)
class KPathPacking:
    k: int
    paths: tuple  # n/k ordered vertex tuples, each of length k


@dataclass(frozen=True)
class KCyclePacking:
    k: int
    cycles: tuple  # n/k cyclic vertex tuples, each of length k


# ---------------------------------------------------------------------------
# packgraph v1 text format


def load_instance(text: str) -> WeightedCompleteGraph:
    """Parse a packgraph v1 document.

    Line 1: ``packgraph 1 n=<int> class=<tag> [denom=<int>]``, followed by the
    strict upper-triangular weight table row by row.  ``#`` starts a comment.
    A declared class that fails validation is downgraded to ``unknown`` with a
    warning.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise FormatError("empty document")
    header = lines[0].split()
    if len(header) < 4 or header[0] != "packgraph" or header[1] != "1":
        raise FormatError(f"bad header: {lines[0]!r}")
    fields = {}
    for tok in header[2:]:
        if "=" not in tok:
            raise FormatError(f"bad header token {tok!r}")
        key, val = tok.split("=", 1)
        fields[key] = val
    try:
        n = int(fields["n"])
        tag = fields["class"]
        denom = int(fields.get("denom", "1"))
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad header fields: {exc}") from exc
    if tag not in WEIGHT_CLASSES:
        raise FormatError(f"unknown class tag {tag!r}")
    entries = []
    for line in lines[1:]:
        for tok in line.split():
            try:
                entries.append(int(tok))
            except ValueError as exc:
                raise FormatError(f"non-integer weight {tok!r}") from exc
    expected = n * (n - 1) // 2
    if len(entries) != expected:
        raise FormatError(f"expected {expected} weights, got {len(entries)}")
    if any(e < 0 for e in entries):
        raise FormatError("negative weight")
    w = np.zeros((n, n), dtype=np.int64)
    it = iter(entries)
    for u in range(n):
        for v in range(u + 1, n):
            x = next(it)
            w[u, v] = w[v, u] = x
    g = WeightedCompleteGraph(n=n, w=w, denom=denom, class_tag=tag)
    if tag != "unknown" and not check_weight_class(g, tag):
        warnings.warn(
            f"declared class {tag!r} fails validation; downgrading to 'unknown'",
            stacklevel=2,
        )
        g = WeightedCompleteGraph(n=n, w=w, denom=denom, class_tag="unknown")
    return g


def save_instance(g: WeightedCompleteGraph) -> str:
    head = f"packgraph 1 n={g.n} class={g.class_tag}"
    if g.denom != 1:
        head += f" denom={g.denom}"
    rows = [head]
    for u in range(g.n):
        if u < g.n - 1:
            rows.append(" ".join(str(int(g.w[u, v])) for v in range(u + 1, g.n)))
    return "\n".join(rows) + "\n"


# ---------------------------------------------------------------------------
# weight-class validation


def is_metric(g: WeightedCompleteGraph):
    """Triangle-inequality check.

    Returns ``(True, None)`` or ``(False, (u, v, x))`` where
    ``w(u,v) > w(u,x) + w(x,v)``.
    """
    w = g.w
    for u in range(g.n):
        for v in range(u + 1, g.n):
            sums = w[u, :] + w[:, v]
            x = int(np.argmin(sums + _self_mask(g.n, u, v)))
            if w[u, v] > sums[x]:
                return False, (u, x, v)
    return True, None


def _self_mask(n: int, u: int, v: int) -> np.ndarray:
    mask = np.zeros(n, dtype=np.int64)
    mask[u] = mask[v] = np.int64(1) << 60
    return mask


def check_weight_class(g: WeightedCompleteGraph, tag: str) -> bool:
    off = ~np.eye(g.n, dtype=bool)
    vals = g.w[off]
    if tag == "metric":
        return is_metric(g)[0]
    if tag == "zero_one":
        return bool(np.isin(vals, (0, 1)).all())
    if tag == "one_two":
        return bool(np.isin(vals, (1, 2)).all())
    return tag == "general"


# ---------------------------------------------------------------------------
# instance generation


def generate_instance(
    n: int,
    class_tag: str = "general",
    distribution: str = "default",
    seed: int = 0,
    max_weight: int = 100,
) -> WeightedCompleteGraph:
    """Deterministic random instance of the requested weight class.

    Metric distributions: ``euclidean`` (random planar points, distances
    scaled by 1000 and rounded up, which preserves the triangle inequality)
    and ``closure`` (all-pairs shortest paths over random weights).
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    rng = np.random.default_rng(seed)
    if class_tag == "general":
        if distribution not in ("default", "uniform"):
            raise ValueError(f"unsupported distribution {distribution!r} for general")
        w = _symmetrize(rng.integers(0, max_weight + 1, size=(n, n)))
    elif class_tag == "zero_one":
        if distribution not in ("default", "uniform"):
            raise ValueError(f"unsupported distribution {distribution!r} for zero_one")
        w = _symmetrize(rng.integers(0, 2, size=(n, n)))
    elif class_tag == "one_two":
        if distribution not in ("default", "uniform"):
            raise ValueError(f"unsupported distribution {distribution!r} for one_two")
        w = _symmetrize(rng.integers(1, 3, size=(n, n)))
        np.fill_diagonal(w, 0)
    elif class_tag == "metric":
        if distribution in ("default", "euclidean"):
            pts = rng.random((n, 2)) * 1000.0
            diff = pts[:, None, :] - pts[None, :, :]
            dist = np.sqrt((diff * diff).sum(axis=2))
            w = np.ceil(dist - 1e-9).astype(np.int64)
            np.fill_diagonal(w, 0)
        elif distribution == "closure":
            raw = _symmetrize(rng.integers(1, max_weight + 1, size=(n, n)))
            w = _metric_closure(raw)
        else:
            raise ValueError(f"unsupported distribution {distribution!r} for metric")
    else:
        raise ValueError(f"cannot generate class {class_tag!r}")
    g = WeightedCompleteGraph(n=n, w=w, class_tag=class_tag)
    if not check_weight_class(g, class_tag):
        raise AssertionError("generated instance fails its class validator")
    return g


def _symmetrize(a: np.ndarray) -> np.ndarray:
    w = np.triu(a.astype(np.int64), 1)
    w = w + w.T
    return w


def _metric_closure(w: np.ndarray) -> np.ndarray:
    d = w.astype(np.int64).copy()
    n = d.shape[0]
    for x in range(n):
        d = np.minimum(d, d[:, x : x + 1] + d[x : x + 1, :])
    np.fill_diagonal(d, 0)
    return d


# ---------------------------------------------------------------------------
# packing evaluation


def tilde_weight(g: WeightedCompleteGraph, path: Sequence[int]) -> int:
    """Sum of the edges at odd positions of an even-length path."""
    k = len(path)
    if k % 2 != 0:
        raise ValueError("tilde weight needs an even-length path")
    return sum(g.weight(path[i], path[i + 1]) for i in range(0, k, 2))


def path_weight(g: WeightedCompleteGraph, path: Sequence[int]) -> int:
    return sum(g.weight(path[i], path[i + 1]) for i in range(len(path) - 1))


def cycle_weight(g: WeightedCompleteGraph, cyc: Sequence[int]) -> int:
    return path_weight(g, cyc) + g.weight(cyc[-1], cyc[0])


def validate_packing(g, packing, k: int, kind: str) -> Optional[str]:
    """Return None if the packing is a valid k-cycle/k-path packing of g,
    otherwise a description of the first violation found."""
    if kind not in ("cycle", "path"):
        raise ValueError(f"kind must be cycle or path, got {kind!r}")
    if g.n % k != 0:
        return f"n={g.n} not divisible by k={k}"
    if kind == "cycle" and k < 3:
        return "cycles need k >= 3"
    blocks = packing.cycles if kind == "cycle" else packing.paths
    if getattr(packing, "k", k) != k:
        return f"packing declares k={packing.k}, expected {k}"
    if len(blocks) != g.n // k:
        return f"expected {g.n // k} blocks, got {len(blocks)}"
    seen = set()
    for blk in blocks:
        if len(blk) != k:
            return f"wrong length {len(blk)} in block {blk}"
        for v in blk:
            if not (0 <= v < g.n):
                return f"vertex {v} out of range"
            if v in seen:
                return f"duplicated vertex {v}"
            seen.add(v)
    if len(seen) != g.n:
        missing = min(set(range(g.n)) - seen)
        return f"missing vertex {missing}"
    return None


def packing_weight(g: WeightedCompleteGraph, packing) -> int:
    """Total weight; cycles include the closing edge, paths do not."""
    if isinstance(packing, KCyclePacking):
        err = validate_packing(g, packing, packing.k, "cycle")
        if err:
            raise PackingError(err)
        return sum(cycle_weight(g, c) for c in packing.cycles)
    if isinstance(packing, KPathPacking):
        err = validate_packing(g, packing, packing.k, "path")
        if err:
            raise PackingError(err)
        return sum(path_weight(g, p) for p in packing.paths)
    raise TypeError(f"not a packing: {packing!r}")


def matching_weight(g: WeightedCompleteGraph, m: Matching) -> int:
    return sum(g.weight(u, v) for u, v in m.edges)
