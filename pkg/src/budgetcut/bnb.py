"""Exact branch-and-bound over cut/shrink decisions.

The search keeps one working graph.  ``forward`` removes every edge of a
budget-feasible cut and records it as *cut*; ``backward`` pops *shrunken*
entries (undoing their contractions) and turns the deepest *cut* entry into
*shrunken* by putting the edge back and contracting its endpoints.  The
combined set of cut edges is checked for validity on the original graph
whenever it changes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional

from .bounds import fractional_max_bound, ranked_edges, residual_min_cut_bound
from .graph import Cut, CutChecker, Edge, GraphError, WeightedGraph, blocks, validate_cut
from .mincut import budgeted_side, minimum_cut

MIN = "min"
MAX = "max"
CUT = "cut"
SHRUNKEN = "shrunken"


class InvariantError(RuntimeError):
    pass


def _sense(sense: str) -> str:
    s = str(sense).lower()
    if s not in (MIN, MAX):
        raise ValueError(f"sense must be 'min' or 'max', got {sense!r}")
    return s


@dataclass
class EdgeState:
    u: int
    v: int
    edge: Edge
    state: str = CUT
    token: object = None


@dataclass
class Limits:
    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None


@dataclass
class SolveReport:
    optimal: Optional[Cut]
    sense: str
    budget: int
    nodes_explored: int = 0
    budgeted_cut_calls: int = 0
    elapsed: float = 0.0
    proven: bool = True
    terminals: Optional[tuple] = None

    @property
    def status(self) -> str:
        if not self.proven:
            return "limit"
        return "optimal" if self.optimal is not None else "infeasible"

    @property
    def value(self):
        return None if self.optimal is None else self.optimal.weight


class SearchState:
    """Tree path, working graph and budget ledger of one search."""

    def __init__(self, g: WeightedGraph, rho: int):
        self.graph = g.copy()
        self.rho = rho
        self.R = rho
        self.weight = 0
        self.cost = 0
        self.path: list[EdgeState] = []
        self.cut_ids: set = set()

    def forward(self, pairs):
        """Cut every live edge ``(u, v)`` in ``pairs``, in order."""
        for u, v in pairs:
            e = self.graph.remove_edge(u, v)
            if e.cost > self.R:
                self.graph.add_edge(u, v, e)
                raise InvariantError("forward would overspend the budget")
            self.path.append(EdgeState(u, v, e))
            self.R -= e.cost
            self.weight += e.weight
            self.cost += e.cost
            self.cut_ids |= e.origin

    def backward(self) -> bool:
        """Move to the next branch; False once the tree is exhausted."""
        path = self.path
        while path and path[-1].state == SHRUNKEN:
            self.graph.restore(path.pop().token)
        if not path:
            return False
        entry = path[-1]
        e = entry.edge
        self.graph.add_edge(entry.u, entry.v, e)
        self.R += e.cost
        self.weight -= e.weight
        self.cost -= e.cost
        self.cut_ids -= e.origin
        entry.token = self.graph.contract(entry.u, entry.v)
        entry.state = SHRUNKEN
        return True

    def ledger_ok(self) -> bool:
        cut = [p.edge for p in self.path if p.state == CUT]
        return (self.R + self.cost == self.rho and self.R >= 0
                and self.cost == sum(e.cost for e in cut)
                and self.weight == sum(e.weight for e in cut))


def _crossing_pairs(g: WeightedGraph, side) -> list[tuple]:
    pairs = [(u, x) for u in side for x in g.adj[u] if x not in side]
    pairs.sort(key=lambda p: min(g.adj[p[0]][p[1]].origin))
    return pairs


def constrained_cut(g: WeightedGraph, rho: int, sense: str = MIN, terminals=None,
                    limits: Optional[Limits] = None, use_bounds: bool = True,
                    tightness="cost",
                    observer: Optional[Callable[[SearchState], None]] = None) -> SolveReport:
    """Optimal budget-constrained min or max cut by depth-first branch and bound.

    ``terminals=(s, t)`` restricts solutions to s-t cuts.  ``use_bounds``
    switches pruning off for differential testing; ``observer`` is called
    with the search state at every tree node.
    """
    sense = _sense(sense)
    if rho < 0:
        raise ValueError("budget must be non-negative")
    g.require_connected()
    if g.n < 2:
        raise GraphError("need at least two vertices")
    if terminals is not None:
        s, t = terminals
        if s == t or s not in g.original_vertices or t not in g.original_vertices:
            raise GraphError(f"invalid terminals {terminals}")
    limits = limits or Limits()
    started = time.perf_counter()
    report = SolveReport(None, sense, rho, terminals=terminals)
    checker = CutChecker(g, terminals)
    is_min = sense == MIN

    incumbent = None
    best = None

    def better(value) -> bool:
        if best is None:
            return True
        return value < best if is_min else value > best

    if is_min:
        seed = minimum_cut(g, "weight")
        if seed.cost <= rho and (terminals is None or seed.separates(*terminals)):
            incumbent, best = seed, seed.weight

    state = SearchState(g, rho)

    def evaluate():
        nonlocal incumbent, best
        if state.cut_ids and better(state.weight):
            cut = checker(state.cut_ids)
            if cut is not None:
                incumbent, best = cut, cut.weight

    def worth_extending() -> bool:
        work = state.graph
        if not any(work.adj.values()):
            return False
        if not use_bounds:
            return True
        if is_min:
            extra = residual_min_cut_bound(work)
            return extra is not None and better(state.weight + extra)
        return better(state.weight + fractional_max_bound(ranked_edges(work), state.R))

    nodes = calls = 0
    while True:
        nodes += 1
        if observer is not None:
            observer(state)
        if limits.max_nodes is not None and nodes > limits.max_nodes:
            report.proven = False
            break
        if limits.max_seconds is not None and time.perf_counter() - started > limits.max_seconds:
            report.proven = False
            break
        side = None
        if worth_extending():
            calls += 1
            side = budgeted_side(state.graph, state.R, tightness)
        if side:
            state.forward(_crossing_pairs(state.graph, side))
            evaluate()
            continue
        if not state.backward():
            break
        evaluate()

    report.optimal = incumbent
    report.nodes_explored = nodes
    report.budgeted_cut_calls = calls
    report.elapsed = time.perf_counter() - started
    return report


# -- structural fast paths ------------------------------------------------

def is_tree(g: WeightedGraph) -> bool:
    return g.n >= 1 and len(g.edge_table) == g.n - 1 and g.is_connected()


def _best_group_choice(groups, rho):
    """Pick at most one option per group, at least one overall, cost <= rho, max weight.

    ``groups`` is a list of lists of ``(cost, weight, payload)``.  Returns
    the chosen payloads or None.
    """
    # states: (cost used, anything chosen) -> (weight, picks)
    states = {(0, False): (0, ())}
    for options in groups:
        nxt = dict(states)
        for (c0, _), (w0, picks) in states.items():
            for c, w, payload in options:
                c1 = c0 + c
                if c1 > rho:
                    continue
                key = (c1, True)
                cand = (w0 + w, picks + (payload,))
                if key not in nxt or cand[0] > nxt[key][0]:
                    nxt[key] = cand
        states = nxt
    chosen = [v for (c, any_), v in states.items() if any_]
    if not chosen:
        return None
    top = max(w for w, _ in chosen)
    return next(p for w, p in chosen if w == top)


def solve_tree(g: WeightedGraph, rho: int, sense: str = MIN) -> Optional[Cut]:
    """Best budget-feasible cut of a tree.

    MIN: the lightest single edge with cost <= ``rho`` (ties by edge id).
    MAX: every subset of tree edges is a cut, so this is a 0/1 knapsack
    over the edges.
    """
    sense = _sense(sense)
    if not is_tree(g):
        raise GraphError("solve_tree needs a tree")
    items = sorted((eid, w, c) for eid, (_, _, w, c) in g.edge_table.items() if c <= rho)
    if not items:
        return None
    if sense == MIN:
        eid = min(items, key=lambda it: (it[1], it[0]))[0]
        return validate_cut(g, {eid})
    picks = _best_group_choice([[(c, w, eid)] for eid, w, c in items], rho)
    return validate_cut(g, set(picks))


def solve_by_blocks(g: WeightedGraph, rho: int, sense: str = MIN) -> Optional[Cut]:
    """Solve block by block and lift the answer to the whole graph.

    MIN: the best single-block optimum.  MAX: cuts of different blocks
    combine freely, so each block contributes its cost/weight frontier
    and the blocks are combined by a multiple-choice knapsack.
    """
    sense = _sense(sense)
    parts = blocks(g)
    if sense == MIN:
        best = None
        for b in parts:
            if b.n == 2:
                (eid, (_, _, w, c)), = b.edge_table.items()
                cut = validate_cut(b, {eid}) if c <= rho else None
            else:
                cut = constrained_cut(b, rho, MIN).optimal
            if cut is not None and (best is None or cut.weight < best.weight):
                best = cut
        return None if best is None else validate_cut(g, best.edges)

    groups = []
    for b in parts:
        frontier = []
        budget = rho
        while budget >= 0:
            cut = constrained_cut(b, budget, MAX).optimal
            if cut is None:
                break
            frontier.append((cut.cost, cut.weight, cut.edges))
            budget = cut.cost - 1
        if frontier:
            groups.append(frontier)
    picks = _best_group_choice(groups, rho)
    if picks is None:
        return None
    return validate_cut(g, frozenset().union(*picks))
