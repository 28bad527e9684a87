"""Fractional-knapsack bounds and the unconstrained min-cut lower bound.

All arithmetic is exact: ratios are ``Fraction`` and zero-cost edges get
an infinite ratio instead of a division by zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .graph import WeightedGraph
from .mincut import minimum_cut_value


@dataclass(frozen=True)
class RankedEdge:
    weight: int
    cost: int
    edge_id: Optional[int] = None

    @property
    def ratio(self):
        if self.cost == 0:
            return math.inf
        return Fraction(self.weight, self.cost)


def ranked_edges(g: WeightedGraph) -> list[RankedEdge]:
    """One entry per live edge (merged edges count once)."""
    return [RankedEdge(e.weight, e.cost, min(e.origin)) for _, _, e in g.edges()]


class _ExactRatio:
    """Tie-breaker comparing w1/c1 < w2/c2 by cross-multiplication."""

    __slots__ = ("w", "c")

    def __init__(self, w, c):
        self.w, self.c = w, c

    def __lt__(self, other):
        return self.w * other.c < other.w * self.c

    def __eq__(self, other):
        return self.w * other.c == other.w * self.c


def _ratio_key(e: RankedEdge):
    # int/int division is correctly rounded, so distinct floats already
    # order the exact ratios; the exact part only settles float ties
    if e.cost == 0:
        return (math.inf, 0)
    return (e.weight / e.cost, _ExactRatio(e.weight, e.cost))


def _fractional(items, T) -> Fraction:
    total_w = 0
    remaining = T
    for it in items:
        if it.cost <= remaining:
            total_w += it.weight
            remaining -= it.cost
        else:
            # first item that does not fit: take the fraction that does
            return Fraction(total_w) + Fraction(remaining * it.weight, it.cost)
    return Fraction(total_w)


def _as_ranked(edges: Iterable) -> list[RankedEdge]:
    return [e if isinstance(e, RankedEdge) else RankedEdge(*e) for e in edges]


def fractional_max_bound(edges: Iterable, T) -> Fraction:
    """Upper bound on any edge subset with total cost at most ``T``.

    Greedy by non-increasing weight/cost ratio, taking the longest prefix
    whose cumulative cost fits and a fraction of the next edge.  Edges may
    be :class:`RankedEdge` or ``(weight, cost)`` pairs.
    """
    if T < 0:
        raise ValueError("budget must be non-negative")
    items = sorted(_as_ranked(edges), key=_ratio_key, reverse=True)
    return _fractional(items, T)


def fractional_min_bound(edges: Iterable, T) -> Fraction:
    """Same greedy as :func:`fractional_max_bound` in non-decreasing ratio order.

    Provided for reference; it is not a valid lower bound in general and
    the solvers never prune with it.
    """
    if T < 0:
        raise ValueError("budget must be non-negative")
    items = sorted(_as_ranked(edges), key=_ratio_key)
    return _fractional(items, T)


def min_cut_lower_bound(g: WeightedGraph) -> int:
    """Weight of the unconstrained minimum cut; no budget-feasible cut is lighter."""
    g.require_connected()
    return minimum_cut_value(g, "weight")


def residual_min_cut_bound(g: WeightedGraph) -> Optional[int]:
    """Least min-cut weight over components with two or more vertices.

    Lower bound on the extra weight of any non-empty extension of a cut
    inside ``g``; None if ``g`` has no edge left to cut.
    """
    best = None
    for comp in g.components():
        if len(comp) < 2:
            continue
        h = g if len(comp) == g.n else g.subgraph(comp)
        val = minimum_cut_value(h, "weight")
        if best is None or val < best:
            best = val
    return best
