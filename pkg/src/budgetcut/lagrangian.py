"""Lagrangian heuristic for the budget-constrained minimum cut.

Relaxing the budget leaves an ordinary min-cut problem on edge values
``w + lam * c``, solved by Stoer-Wagner.  A one-dimensional search over
``lam`` keeps an infeasible cut A and a feasible cut B and probes the
multiplier where their Lagrangian lines cross.  Every cut-of-the-phase
seen on the way is also checked against the real budget.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .graph import Cut, WeightedGraph, cut_from_side
from .mincut import minimum_cut


@dataclass(frozen=True)
class LagrangePoint:
    lam: Fraction
    cut: Cut
    l1: int
    l2: int
    L: Fraction
    harvested: tuple = ()

    @property
    def feasible(self) -> bool:
        return self.l2 <= 0

    @property
    def support(self):
        return (self.l1, self.l2)


@dataclass
class DualReport:
    best_primal: Optional[Cut]
    dual_bound: Optional[Fraction]
    budget: int
    iterations: int = 0
    harvested_improvements: int = 0
    refined: bool = False
    proven: bool = False
    infeasible: bool = False
    points: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def status(self) -> str:
        if self.infeasible:
            return "infeasible"
        return "optimal" if self.proven else "heuristic"

    @property
    def value(self):
        return None if self.best_primal is None else self.best_primal.weight


def evaluate_lambda(g: WeightedGraph, T: int, lam, harvest: bool = True) -> LagrangePoint:
    """Minimum cut under ``w + lam*c`` packaged with its Lagrangian terms."""
    lam = Fraction(lam)
    if lam < 0:
        raise ValueError("multiplier must be non-negative")
    phases = []
    cut = minimum_cut(g, lambda e: e.weight + lam * e.cost,
                      visitor=phases.append if harvest else None)
    l2 = cut.cost - T
    return LagrangePoint(lam, cut, cut.weight, l2, cut.weight + lam * l2, tuple(phases))


def kl_refine(g: WeightedGraph, start: Cut, T: int) -> Cut:
    """Single-vertex local search from a feasible cut.

    Scans vertices by id and applies the first move that strictly lowers
    the cut weight while keeping cost <= T and both sides non-empty;
    repeats until no move helps.
    """
    if start.cost > T:
        raise ValueError("kl_refine needs a budget-feasible start")
    adj = {v: [] for v in g.original_vertices}
    for u, v, w, c in g.edge_table.values():
        adj[u].append((v, w, c))
        adj[v].append((u, w, c))
    in_b = {v: v in start.side_b for v in adj}
    size_b = len(start.side_b)
    n = len(adj)
    weight, cost = start.weight, start.cost
    order = sorted(adj)
    improved = True
    while improved:
        improved = False
        for v in order:
            if size_b == (1 if in_b[v] else n - 1):
                continue  # move would empty a side
            dw = dc = 0
            for x, w, c in adj[v]:
                if in_b[x] == in_b[v]:
                    dw += w
                    dc += c
                else:
                    dw -= w
                    dc -= c
            if dw < 0 and cost + dc <= T:
                in_b[v] = not in_b[v]
                size_b += -1 if not in_b[v] else 1
                weight += dw
                cost += dc
                improved = True
                break
    return cut_from_side(g, [v for v in adj if not in_b[v]])


def solve_dual(g: WeightedGraph, T: int, harvest: bool = True, refine: bool = True,
               max_iter: int = 100, lambda_big=None) -> DualReport:
    """Lagrangian dual search with Stoer-Wagner subproblems.

    Returns the best feasible cut seen (extreme points, harvested phase
    cuts and, with ``refine``, their local-search improvements) and the
    best dual bound.  ``proven`` is set only when the multiplier-0 cut is
    already feasible or the primal value equals the dual bound.
    """
    if T < 0:
        raise ValueError("budget must be non-negative")
    g.require_connected()
    started = time.perf_counter()
    report = DualReport(None, None, T)
    best: Optional[Cut] = None

    def offer(cut: Cut) -> bool:
        nonlocal best
        if cut.cost > T:
            return False
        if refine:
            polished = kl_refine(g, cut, T)
            if polished.weight < cut.weight:
                cut = polished
                report.refined = True
        if best is None or cut.weight < best.weight:
            best = cut
            return True
        return False

    def probe(lam) -> LagrangePoint:
        pt = evaluate_lambda(g, T, lam, harvest)
        report.points.append(pt)
        report.iterations += 1
        offer(pt.cut)
        for cut in pt.harvested:
            if offer(cut):
                report.harvested_improvements += 1
        return pt

    a = probe(0)
    if a.feasible:
        report.best_primal = a.cut
        report.dual_bound = a.L
        report.proven = True
        report.elapsed = time.perf_counter() - started
        return report

    if lambda_big is None:
        lambda_big = 1 + g.total_weight()
    b = probe(lambda_big)
    if not b.feasible:
        report.infeasible = True
        report.proven = True
        report.dual_bound = max(p.L for p in report.points)
        report.elapsed = time.perf_counter() - started
        return report

    while report.iterations < max_iter:
        lam = Fraction(b.l1 - a.l1, a.l2 - b.l2)
        c = probe(lam)
        if c.support in (a.support, b.support):
            break
        if c.feasible:
            b = c
        else:
            a = c

    report.best_primal = best
    report.dual_bound = max(p.L for p in report.points)
    report.proven = best is not None and best.weight == report.dual_bound
    report.elapsed = time.perf_counter() - started
    return report
