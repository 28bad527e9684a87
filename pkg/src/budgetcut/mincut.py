"""Stoer-Wagner minimum cut and its budget-stopping variant.

Both routines run maximum-adjacency phases on a private contracted copy of
the live graph.  Start vertex is the lowest live id; ties in the
maximum-adjacency order go to the lowest id.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .graph import Cut, GraphError, WeightedGraph, live_cut

Attribute = Union[str, Callable]


def _value_of(attribute: Attribute) -> Callable:
    if attribute == "weight":
        return lambda e: e.weight
    if attribute == "cost":
        return lambda e: e.cost
    if callable(attribute):
        return attribute
    raise ValueError(f"unknown edge attribute {attribute!r}")


class _Work:
    """Raw contracted view: attribute maps and live-vertex member sets."""

    __slots__ = ("tight", "cost", "members")

    def __init__(self, g: WeightedGraph, vertices, tight_of, cost_of=None):
        vertices = list(vertices)
        inside = set(vertices)
        self.tight = {v: {x: tight_of(e) for x, e in g.adj[v].items() if x in inside}
                      for v in vertices}
        if cost_of is None:
            self.cost = None
        elif cost_of is tight_of:
            self.cost = self.tight
        else:
            self.cost = {v: {x: cost_of(e) for x, e in g.adj[v].items() if x in inside}
                         for v in vertices}
        self.members = {v: {v} for v in vertices}

    def merge(self, s, t):
        keep, gone = (s, t) if s < t else (t, s)
        maps = [self.tight] if self.cost is None or self.cost is self.tight \
            else [self.tight, self.cost]
        for adj in maps:
            gone_adj = adj.pop(gone)
            keep_adj = adj[keep]
            gone_adj.pop(keep, None)
            keep_adj.pop(gone, None)
            for x, val in gone_adj.items():
                nbx = adj[x]
                del nbx[gone]
                merged = keep_adj.get(x, 0) + val
                keep_adj[x] = nbx[keep] = merged
        self.members[keep] |= self.members.pop(gone)


def _max_adjacency(tight, start):
    """Yield ``(vertex, tightness)`` in maximum-adjacency order from ``start``."""
    conn = dict.fromkeys(tight, 0)
    heap = [(0, v) for v in tight if v != start]
    heapq.heapify(heap)
    in_a = {start}
    yield start, 0
    for x, val in tight[start].items():
        conn[x] += val
        heapq.heappush(heap, (-conn[x], x))
    while heap:
        neg, v = heapq.heappop(heap)
        if v in in_a or -neg != conn[v]:
            continue
        in_a.add(v)
        yield v, conn[v]
        for x, val in tight[v].items():
            if x not in in_a:
                conn[x] += val
                heapq.heappush(heap, (-conn[x], x))


def _stoer_wagner(work: _Work, on_phase=None):
    """Return ``(value, members of the separated side)`` of a global min cut."""
    best_value = None
    best_side = None
    while len(work.tight) > 1:
        order = []
        last_tight = 0
        for v, t_val in _max_adjacency(work.tight, min(work.tight)):
            order.append(v)
            last_tight = t_val
        s, t = order[-2], order[-1]
        if on_phase is not None:
            on_phase(frozenset(work.members[t]), last_tight)
        if best_value is None or last_tight < best_value:
            best_value = last_tight
            best_side = frozenset(work.members[t])
        work.merge(s, t)
    return best_value, best_side


def minimum_cut(g: WeightedGraph, attribute: Attribute = "weight",
                visitor: Optional[Callable[[Cut], None]] = None) -> Cut:
    """Global minimum cut of the live graph under ``attribute``.

    ``attribute`` is ``"weight"``, ``"cost"`` or a callable on
    :class:`~budgetcut.graph.Edge`.  ``visitor`` receives every
    cut-of-the-phase in order.  Ties go to the first phase reaching the
    minimum.
    """
    if g.n < 2:
        raise GraphError("minimum cut needs at least two vertices")
    work = _Work(g, g.adj, _value_of(attribute))
    hook = None
    if visitor is not None:
        def hook(side, _value):
            visitor(live_cut(g, side))
    _, side = _stoer_wagner(work, hook)
    return live_cut(g, side)


def minimum_cut_value(g: WeightedGraph, attribute: Attribute = "weight"):
    """Minimum cut value only; 0 for a disconnected graph."""
    if g.n < 2:
        raise GraphError("minimum cut needs at least two vertices")
    value, _ = _stoer_wagner(_Work(g, g.adj, _value_of(attribute)))
    return value


@dataclass
class PhaseResult:
    """Outcome of one budgeted phase.

    With ``early_exit`` the cut is a budget-feasible cut(A) and nothing was
    merged; otherwise it is the cut-of-the-phase and ``last_two`` were
    merged in the graph.
    """

    cut: Cut
    early_exit: bool
    last_two: Optional[tuple] = None


def _budgeted_phase(work: _Work, start, rho):
    """Grow A until cost(cut(A)) <= rho or A = V.

    Returns ``("found", A)`` or ``("phase", s, t)``.
    """
    cost = work.cost
    n = len(work.tight)
    in_a = set()
    cut_cost = 0
    order = []
    for v, _ in _max_adjacency(work.tight, start):
        delta = 0
        for x, c in cost[v].items():
            delta += -c if x in in_a else c
        cut_cost += delta
        in_a.add(v)
        order.append(v)
        if len(order) < n and cut_cost <= rho:
            return ("found", order)
    return ("phase", order[-2], order[-1])


def budgeted_cut_phase(g: WeightedGraph, a: int, rho, tightness: Attribute = "cost") -> PhaseResult:
    """One phase of the budget-stopping Stoer-Wagner routine, in place on ``g``.

    Vertices join A in maximum-adjacency order (by ``tightness``); the
    phase stops as soon as cost(cut(A)) <= ``rho`` with A != V.  If it runs
    to completion, the last two vertices are merged in ``g``.
    """
    if a not in g.adj:
        raise GraphError(f"start vertex {a} is not a live vertex")
    if g.n < 2:
        raise GraphError("a phase needs at least two vertices")
    tight_of = _value_of(tightness)
    cost_of = _value_of("cost")
    work = _Work(g, g.adj, tight_of, cost_of if tightness != "cost" else tight_of)
    result = _budgeted_phase(work, a, rho)
    if result[0] == "found":
        return PhaseResult(live_cut(g, result[1]), True)
    _, s, t = result
    cut = live_cut(g, [t])
    g.contract(s, t)
    return PhaseResult(cut, False, (s, t))


def _budgeted_side(g: WeightedGraph, vertices, rho, tightness: Attribute = "cost"):
    """Live vertices of a budget-feasible cut(A) within one component, or None."""
    tight_of = _value_of(tightness)
    cost_of = tight_of if tightness == "cost" else _value_of("cost")
    work = _Work(g, vertices, tight_of, cost_of)
    while len(work.tight) > 1:
        result = _budgeted_phase(work, min(work.tight), rho)
        if result[0] == "found":
            return set().union(*(work.members[v] for v in result[1]))
        work.merge(result[1], result[2])
    return None


def budgeted_side(g: WeightedGraph, rho, tightness: Attribute = "cost"):
    """Like :func:`budgeted_cut` but returns the live side set.

    Components of a disconnected graph are searched in order of their
    lowest vertex, so a returned side always cuts at least one live edge.
    """
    for comp in g.components():
        if len(comp) < 2:
            continue
        side = _budgeted_side(g, comp, rho, tightness)
        if side is not None:
            return side
    return None


def budgeted_cut(g: WeightedGraph, rho, tightness: Attribute = "cost") -> Optional[Cut]:
    """Any cut of ``g`` whose cost is at most ``rho``, or None.

    Repeats budgeted phases, merging each phase's last two vertices, until
    a feasible cut(A) turns up or one vertex is left.  ``g`` is not
    modified.  With cost tightness a cut is returned exactly when the
    cost-minimal cut fits the budget.
    """
    if rho < 0:
        raise ValueError("budget must be non-negative")
    side = budgeted_side(g, rho, tightness)
    if side is None:
        return None
    return live_cut(g, side)
