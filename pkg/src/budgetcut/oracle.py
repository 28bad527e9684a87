"""Exhaustive ground truth for small instances."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .graph import Cut, GraphError, WeightedGraph, cut_from_side

MAX_ORACLE_VERTICES = 20


class OracleSizeError(GraphError):
    pass


@dataclass(frozen=True)
class KnapsackItem:
    profit: int
    weight: int

    def __post_init__(self):
        if self.profit < 0 or self.weight < 0:
            raise ValueError("knapsack items need non-negative profit and weight")


def enumerate_partitions(g: WeightedGraph):
    """Vectorised weight and cost of all 2**(n-1) bipartitions.

    Bit ``i`` of the mask puts the ``i``-th vertex (sorted, lowest excluded)
    on side B; mask 0 is the trivial partition.  Returns
    ``(vertices, weights, costs)`` arrays indexed by mask.
    """
    verts = sorted(g.original_vertices)
    index = {v: i - 1 for i, v in enumerate(verts)}  # lowest vertex -> -1 (fixed on A)
    masks = np.arange(1 << (len(verts) - 1), dtype=np.int64)
    weights = np.zeros(masks.shape, dtype=np.int64)
    costs = np.zeros(masks.shape, dtype=np.int64)
    for u, v, w, c in g.edge_table.values():
        bu = (masks >> index[u]) & 1 if index[u] >= 0 else 0
        bv = (masks >> index[v]) & 1 if index[v] >= 0 else 0
        crossing = (bu ^ bv).astype(bool)
        weights[crossing] += w
        costs[crossing] += c
    return verts, weights, costs


def brute_force_cut(g: WeightedGraph, rho, sense: str = "min", terminals=None,
                    max_vertices: int = MAX_ORACLE_VERTICES) -> Optional[Cut]:
    """Best bipartition with cost <= ``rho`` by full enumeration.

    The lowest vertex stays on side A.  Ties go to the lexicographically
    smallest side-B vertex set.
    """
    sense = sense.lower()
    if sense not in ("min", "max"):
        raise ValueError(f"sense must be 'min' or 'max', got {sense!r}")
    n = len(g.original_vertices)
    if n > max_vertices:
        raise OracleSizeError(f"{n} vertices exceeds the oracle cap of {max_vertices}")
    if n < 2:
        return None
    verts, weights, costs = enumerate_partitions(g)
    ok = costs <= rho
    ok[0] = False
    if terminals is not None:
        s, t = terminals
        pos = {v: i - 1 for i, v in enumerate(verts)}
        masks = np.arange(len(weights), dtype=np.int64)
        side = [(masks >> pos[x]) & 1 if pos[x] >= 0 else np.zeros_like(masks) for x in (s, t)]
        ok &= side[0] != side[1]
    if not ok.any():
        return None
    feasible_w = weights[ok]
    target = feasible_w.min() if sense == "min" else feasible_w.max()
    candidates = np.flatnonzero(ok & (weights == target))

    def side_b(mask):
        return tuple(v for i, v in enumerate(verts[1:]) if (int(mask) >> i) & 1)

    best = min(candidates, key=side_b)
    b = set(side_b(best))
    return cut_from_side(g, [v for v in verts if v not in b])


def knapsack_dp(items: Sequence, T: int) -> int:
    """Maximum total profit of items whose total weight is at most ``T``."""
    if T < 0:
        raise ValueError("capacity must be non-negative")
    best = [0] * (T + 1)
    for it in items:
        p, w = (it.profit, it.weight) if isinstance(it, KnapsackItem) else it
        for cap in range(T, w - 1, -1):
            cand = best[cap - w] + p
            if cand > best[cap]:
                best[cap] = cand
    return best[T]


def knapsack_exhaustive(items: Sequence, T: int) -> int:
    """Subset enumeration; reference for :func:`knapsack_dp`."""
    pairs = [(it.profit, it.weight) if isinstance(it, KnapsackItem) else tuple(it) for it in items]
    best = 0
    for k in range(1, len(pairs) + 1):
        for combo in combinations(pairs, k):
            if sum(w for _, w in combo) <= T:
                best = max(best, sum(p for p, _ in combo))
    return best
