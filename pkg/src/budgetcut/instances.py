"""Instance files, random generation, budgets and the knapsack reduction.

Native text format (ASCII, 1-based vertex ids)::

    # anything after '#' is a comment
    n m
    u v weight cost        (m lines)
    terminals s t          (optional)

A first comment of the form ``# instance <name>`` names the instance.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .graph import GraphError, WeightedGraph
from .mincut import minimum_cut
from .oracle import KnapsackItem


class InstanceFormatError(GraphError):
    def __init__(self, message, line: Optional[int] = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@dataclass
class Instance:
    name: str
    graph: WeightedGraph
    terminals: Optional[tuple] = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("instance name must be non-empty")


def _data_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body.split()


def _ints(tokens, lineno, count):
    if len(tokens) != count:
        raise InstanceFormatError(f"expected {count} integers, got {len(tokens)}", lineno)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InstanceFormatError(f"not an integer in {' '.join(tokens)!r}", lineno) from None


def _name_from_comment(text):
    for raw in text.splitlines():
        s = raw.strip()
        if s.startswith("# instance "):
            return s[len("# instance "):].strip() or None
        if s and not s.startswith("#"):
            return None
    return None


def parse_instance(text: str, name: Optional[str] = None) -> Instance:
    """Parse the native format; duplicate edges are merged, disconnected graphs rejected."""
    lines = list(_data_lines(text))
    if not lines:
        raise InstanceFormatError("empty instance")
    lineno, head = lines[0]
    n, m = _ints(head, lineno, 2)
    if n <= 0:
        raise InstanceFormatError("vertex count must be positive", lineno)
    if m < 0:
        raise InstanceFormatError("edge count must be non-negative", lineno)
    if len(lines) - 1 < m:
        raise InstanceFormatError(f"expected {m} edge lines, found {len(lines) - 1}")
    records = []
    for lineno, tokens in lines[1:m + 1]:
        u, v, w, c = _ints(tokens, lineno, 4)
        if not (1 <= u <= n and 1 <= v <= n):
            raise InstanceFormatError(f"vertex id outside 1..{n}", lineno)
        if u == v:
            raise InstanceFormatError(f"self-loop at vertex {u}", lineno)
        if w < 0 or c < 0:
            raise InstanceFormatError("weight and cost must be non-negative", lineno)
        records.append((u, v, w, c))
    terminals = None
    for lineno, tokens in lines[m + 1:]:
        if tokens[0] == "terminals" and terminals is None:
            s, t = _ints(tokens[1:], lineno, 2)
            if not (1 <= s <= n and 1 <= t <= n) or s == t:
                raise InstanceFormatError("terminals must be two distinct vertices", lineno)
            terminals = (s, t)
        else:
            raise InstanceFormatError(f"unexpected line {' '.join(tokens)!r}", lineno)
    g = WeightedGraph(records, vertices=range(1, n + 1))
    g.require_connected()
    return Instance(name or _name_from_comment(text) or "instance", g, terminals)


def parse_dimacs(text: str, name: Optional[str] = None) -> Instance:
    """DIMACS-like import: ``c`` comments, ``p <kind> n m``, ``e u v [w [c]]``.

    Missing weights and costs default to 1.
    """
    n = None
    records = []
    for lineno, tokens in _data_lines(text):
        tag = tokens[0]
        if tag == "c":
            continue
        if tag == "p":
            if len(tokens) != 4:
                raise InstanceFormatError("problem line must be 'p <kind> n m'", lineno)
            n, _ = _ints(tokens[2:], lineno, 2)
        elif tag in ("e", "a"):
            if n is None:
                raise InstanceFormatError("edge before problem line", lineno)
            vals = _ints(tokens[1:], lineno, len(tokens) - 1)
            if not 2 <= len(vals) <= 4:
                raise InstanceFormatError("edge line must be 'e u v [w [c]]'", lineno)
            vals += [1] * (4 - len(vals))
            records.append(tuple(vals))
        else:
            raise InstanceFormatError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise InstanceFormatError("missing problem line")
    body = "\n".join([f"{n} {len(records)}"] + [" ".join(map(str, r)) for r in records])
    return parse_instance(body, name)


def serialize_instance(inst: Instance) -> str:
    g = inst.graph
    n = max(g.original_vertices)
    lines = [f"# instance {inst.name}", f"{n} {len(g.edge_table)}"]
    for eid in sorted(g.edge_table):
        lines.append(" ".join(str(x) for x in g.edge_table[eid]))
    if inst.terminals is not None:
        lines.append("terminals {} {}".format(*inst.terminals))
    return "\n".join(lines) + "\n"


def read_instance(path) -> Instance:
    from pathlib import Path

    p = Path(path)
    text = p.read_text()
    if p.suffix in (".dimacs", ".col", ".gr"):
        return parse_dimacs(text, p.stem)
    return parse_instance(text, _name_from_comment(text) or p.stem)


def generate_random(n: int, m: int, seed, name: Optional[str] = None,
                    low: int = 1, high: int = 10) -> Instance:
    """Random connected graph: random spanning tree plus distinct extra edges.

    Weights and costs are uniform integers in ``[low, high]``.  Same
    arguments, same instance.
    """
    if n < 2 or not (n - 1 <= m <= n * (n - 1) // 2):
        raise ValueError(f"no simple connected graph with n={n}, m={m}")
    rng = random.Random(seed)
    order = list(range(1, n + 1))
    rng.shuffle(order)
    pairs = set()
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        pairs.add((min(u, v), max(u, v)))
    rest = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if (u, v) not in pairs]
    pairs.update(rng.sample(rest, m - (n - 1)))
    records = [(u, v, rng.randint(low, high), rng.randint(low, high)) for u, v in sorted(pairs)]
    return Instance(name or f"rnd_{n}_{m}_{seed}", WeightedGraph(records, range(1, n + 1)))


@dataclass(frozen=True)
class BudgetSpec:
    mode: str  # "absolute" or "relative"
    T: int
    m_w: Optional[int] = None
    m_c: Optional[int] = None
    p: Optional[Fraction] = None

    @classmethod
    def absolute(cls, T: int) -> "BudgetSpec":
        if T < 0:
            raise ValueError("budget must be non-negative")
        return cls("absolute", int(T))


def _fraction(p) -> Fraction:
    if isinstance(p, float):
        return Fraction(repr(float(p)))  # shortest decimal, e.g. 0.1 -> 1/10
    return Fraction(p)


def compute_budget(g: WeightedGraph, p) -> BudgetSpec:
    """T = m_w + floor(p * m_c) from the weight-minimal and cost-minimal cuts."""
    g.require_connected()
    p = _fraction(p)
    if p < 0:
        raise ValueError("budget fraction must be non-negative")
    m_w = minimum_cut(g, "weight").weight
    m_c = minimum_cut(g, "cost").cost
    return BudgetSpec("relative", m_w + math.floor(p * m_c), m_w, m_c, p)


def knapsack_to_cut(items: Sequence, capacity: int):
    """Build the s-t cut instance whose budgeted min cut solves a 0/1 knapsack.

    Vertices: s = 1, t = 2, item i -> i + 2.  Edge (s, v_i) has weight 0
    and cost M; edge (v_i, t) has weight w_i and cost M - c_i, with
    M = max c_i.  Returns ``(instance, rho)``; the s-t optimum equals
    ``sum(w_i) - knapsack_dp(items, capacity)``.
    """
    items = [it if isinstance(it, KnapsackItem) else KnapsackItem(*it) for it in items]
    if not items:
        raise ValueError("need at least one item")
    if capacity < 0:
        raise ValueError("capacity must be non-negative")
    big = max(it.weight for it in items)
    s, t = 1, 2
    records = []
    for i, it in enumerate(items, start=3):
        records.append((s, i, 0, big))
        records.append((i, t, it.profit, big - it.weight))
    rho = len(items) * big - sum(it.weight for it in items) + capacity
    g = WeightedGraph(records, range(1, len(items) + 3))
    return Instance(f"knapsack_{len(items)}_{capacity}", g, (s, t)), rho


def parse_items(text: str) -> list[KnapsackItem]:
    """Items file: one ``profit weight`` pair per line, '#' comments."""
    items = []
    for lineno, tokens in _data_lines(text):
        p, w = _ints(tokens, lineno, 2)
        try:
            items.append(KnapsackItem(p, w))
        except ValueError as exc:
            raise InstanceFormatError(str(exc), lineno) from None
    return items


def _cut_record(cut):
    if cut is None:
        return {"value": None, "cost": None, "cut": [], "partition": None}
    g_edges = sorted(cut.edges)
    return {
        "value": cut.weight,
        "cost": cut.cost,
        "cut": g_edges,
        "partition": [sorted(cut.side_a), sorted(cut.side_b)],
    }


def serialize_solution(report, graph: Optional[WeightedGraph] = None, method: Optional[str] = None,
                       timing: bool = True) -> str:
    """One JSON object per solve.

    Stable keys: status, sense, budget, value, cost, cut, partition, nodes,
    calls, millis, proven.  ``cut`` lists original edge ids, or endpoint
    pairs when ``graph`` is given.  Lagrangian reports add ``dual_bound``.
    """
    from .bnb import SolveReport

    if isinstance(report, SolveReport):
        best = report.optimal
        rec = {"status": report.status, "sense": report.sense, "budget": report.budget}
        rec.update(_cut_record(best))
        rec.update(nodes=report.nodes_explored, calls=report.budgeted_cut_calls)
    else:
        best = report.best_primal
        rec = {"status": report.status, "sense": "min", "budget": report.budget}
        rec.update(_cut_record(best))
        rec.update(nodes=report.iterations, calls=report.iterations,
                   dual_bound=None if report.dual_bound is None else str(report.dual_bound))
    if graph is not None and best is not None:
        rec["cut"] = [list(graph.edge_table[i][:2]) for i in sorted(best.edges)]
    rec["millis"] = round(report.elapsed * 1000, 3) if timing else 0
    rec["proven"] = bool(report.proven)
    if method is not None:
        rec["method"] = method
    return json.dumps(rec)
