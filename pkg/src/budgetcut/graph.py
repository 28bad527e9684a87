"""Undirected multigraph with edge weights and cutting costs.

Parallel edges are merged eagerly: a stored edge carries the summed weight
and cost of every original edge it stands for, plus the set of their ids.
Contraction is done in place and returns a token that :meth:`restore`
uses to undo it exactly, which is what the branch-and-bound relies on.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Optional


class GraphError(ValueError):
    """Invalid graph input or an invalid reference into a graph."""


class DisconnectedGraphError(GraphError):
    pass


class DegeneratePartitionError(GraphError):
    pass


class Edge(NamedTuple):
    weight: int
    cost: int
    origin: frozenset


@dataclass(frozen=True)
class Cut:
    """A bipartition and the original edges crossing it.

    ``side_a`` always holds the lowest vertex id of the graph.
    """

    edges: frozenset
    weight: int
    cost: int
    side_a: frozenset
    side_b: frozenset

    @property
    def partition(self) -> dict:
        labels = {v: "A" for v in self.side_a}
        labels.update((v, "B") for v in self.side_b)
        return labels

    def separates(self, s, t) -> bool:
        return (s in self.side_a) != (t in self.side_a)

    def __len__(self):
        return len(self.edges)


class _Contraction(NamedTuple):
    keep: int
    gone: int
    gone_adj: dict
    loop: Edge
    previous: list  # (neighbor, edge between keep and neighbor before, or None)
    keep_members: frozenset
    gone_members: frozenset


class WeightedGraph:
    """Mutable working graph over a fixed table of original edges.

    ``edges`` is an iterable of ``(u, v, weight, cost)``; original edge ids
    are assigned 1, 2, ... in input order unless a mapping ``id -> record``
    is given.  ``vertices`` defaults to every endpoint; pass it to include
    isolated vertices.
    """

    def __init__(self, edges, vertices: Optional[Iterable[int]] = None):
        if isinstance(edges, Mapping):
            records = {int(k): tuple(r) for k, r in edges.items()}
        else:
            records = {i: tuple(r) for i, r in enumerate(edges, start=1)}
        verts = set() if vertices is None else {int(v) for v in vertices}
        for eid, rec in records.items():
            if len(rec) != 4:
                raise GraphError(f"edge {eid}: expected (u, v, weight, cost)")
            u, v, w, c = rec
            if u == v:
                raise GraphError(f"edge {eid}: self-loop at vertex {u}")
            if w < 0 or c < 0:
                raise GraphError(f"edge {eid}: negative weight or cost")
            if vertices is not None and (u not in verts or v not in verts):
                raise GraphError(f"edge {eid}: endpoint outside the vertex set")
            verts.update((u, v))
        # original edge table, shared by copies and never mutated
        self.edge_table: dict[int, tuple] = records
        self.adj: dict[int, dict[int, Edge]] = {v: {} for v in sorted(verts)}
        self.members: dict[int, frozenset] = {v: frozenset((v,)) for v in verts}
        for eid in sorted(records):
            u, v, w, c = records[eid]
            old = self.adj[u].get(v)
            if old is None:
                e = Edge(w, c, frozenset((eid,)))
            else:
                e = Edge(old.weight + w, old.cost + c, old.origin | {eid})
            self.adj[u][v] = self.adj[v][u] = e
        self._original_vertices = frozenset(verts)

    # -- inspection ---------------------------------------------------

    @property
    def vertices(self) -> list[int]:
        return sorted(self.adj)

    @property
    def original_vertices(self) -> frozenset:
        return self._original_vertices

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self.adj.values()) // 2

    def edges(self):
        """Yield ``(u, v, Edge)`` for every live edge with ``u < v``."""
        for u, nb in self.adj.items():
            for v, e in nb.items():
                if u < v:
                    yield u, v, e

    def edge(self, u: int, v: int) -> Edge:
        try:
            return self.adj[u][v]
        except KeyError:
            raise GraphError(f"no live edge between {u} and {v}") from None

    def total_weight(self) -> int:
        return sum(e.weight for _, _, e in self.edges())

    def total_cost(self) -> int:
        return sum(e.cost for _, _, e in self.edges())

    def representative(self, original_vertex: int) -> int:
        for v, mem in self.members.items():
            if original_vertex in mem:
                return v
        raise GraphError(f"unknown vertex {original_vertex}")

    def live_endpoints(self, edge_id: int) -> tuple[int, int]:
        """Current super-vertices holding the endpoints of an original edge."""
        if edge_id not in self.edge_table:
            raise GraphError(f"unknown edge id {edge_id}")
        u, v = self.edge_table[edge_id][:2]
        ru, rv = self.representative(u), self.representative(v)
        if ru == rv or edge_id not in self.adj[ru].get(rv, Edge(0, 0, frozenset())).origin:
            raise GraphError(f"edge {edge_id} is not live")
        return ru, rv

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def components(self) -> list[list[int]]:
        """Connected components of the live graph, each sorted, ordered by least id."""
        seen = set()
        comps = []
        for s in sorted(self.adj):
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque((s,))
            while queue:
                x = queue.popleft()
                for y in self.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def require_connected(self):
        if self.n == 0:
            raise GraphError("empty graph")
        if not self.is_connected():
            raise DisconnectedGraphError(
                "graph is disconnected; it has a trivial zero-weight, zero-cost cut")

    def copy(self) -> "WeightedGraph":
        g = WeightedGraph.__new__(WeightedGraph)
        g.edge_table = self.edge_table
        g.adj = {v: dict(nb) for v, nb in self.adj.items()}
        g.members = dict(self.members)
        g._original_vertices = self._original_vertices
        return g

    def subgraph(self, vertices: Iterable[int]) -> "WeightedGraph":
        """Induced subgraph on live vertices, keeping merged edges and members."""
        keep = set(vertices)
        g = WeightedGraph.__new__(WeightedGraph)
        g.edge_table = self.edge_table
        g.adj = {v: {x: e for x, e in self.adj[v].items() if x in keep}
                 for v in sorted(keep)}
        g.members = {v: self.members[v] for v in keep}
        g._original_vertices = frozenset().union(*g.members.values()) if keep else frozenset()
        return g

    def edge_subgraph(self, edge_ids: Iterable[int]) -> "WeightedGraph":
        """Fresh graph made of the given original edges, ids preserved."""
        return WeightedGraph({i: self.edge_table[i] for i in edge_ids})

    def snapshot(self):
        """Canonical, hashable view of the live state (for equality checks)."""
        return (
            tuple(sorted((v, tuple(sorted(m))) for v, m in self.members.items())),
            tuple(sorted((u, v, e.weight, e.cost, tuple(sorted(e.origin)))
                         for u, v, e in self.edges())),
        )

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, m={self.m})"

    # -- mutation with exact undo -------------------------------------

    def remove_edge(self, u: int, v: int) -> Edge:
        e = self.edge(u, v)
        del self.adj[u][v]
        del self.adj[v][u]
        return e

    def add_edge(self, u: int, v: int, e: Edge):
        if v in self.adj[u]:
            raise GraphError(f"edge between {u} and {v} already present")
        self.adj[u][v] = self.adj[v][u] = e

    def contract(self, u: int, v: int) -> _Contraction:
        """Merge live vertices ``u`` and ``v`` into the lower id.

        An edge joining them becomes a loop and is dropped; edges to a
        common neighbour are merged.  Returns a token for :meth:`restore`.
        """
        if u == v or u not in self.adj or v not in self.adj:
            raise GraphError(f"cannot contract {u} and {v}")
        keep, gone = (u, v) if u < v else (v, u)
        gone_adj = self.adj.pop(gone)
        loop = gone_adj.pop(keep, None)
        keep_adj = self.adj[keep]
        keep_adj.pop(gone, None)
        previous = []
        for x, e in gone_adj.items():
            nbx = self.adj[x]
            del nbx[gone]
            old = keep_adj.get(x)
            previous.append((x, old))
            if old is None:
                merged = e
            else:
                merged = Edge(old.weight + e.weight, old.cost + e.cost, old.origin | e.origin)
            keep_adj[x] = nbx[keep] = merged
        keep_members = self.members[keep]
        gone_members = self.members.pop(gone)
        self.members[keep] = keep_members | gone_members
        return _Contraction(keep, gone, gone_adj, loop, previous, keep_members, gone_members)

    def restore(self, token: _Contraction):
        """Undo a :meth:`contract`; tokens must be restored in LIFO order."""
        keep, gone, gone_adj, loop, previous, keep_members, gone_members = token
        keep_adj = self.adj[keep]
        for x, old in previous:
            nbx = self.adj[x]
            if old is None:
                del keep_adj[x]
                del nbx[keep]
            else:
                keep_adj[x] = nbx[keep] = old
            nbx[gone] = gone_adj[x]
        self.adj[gone] = gone_adj
        if loop is not None:
            keep_adj[gone] = gone_adj[keep] = loop
        self.members[keep] = keep_members
        self.members[gone] = gone_members


def contract(g: WeightedGraph, edge_id: int) -> WeightedGraph:
    """Return a copy of ``g`` with the endpoints of original edge ``edge_id`` merged."""
    h = g.copy()
    h.contract(*h.live_endpoints(edge_id))
    return h


def _original_adjacency(g: WeightedGraph) -> dict:
    adj = {v: [] for v in g.original_vertices}
    for eid, (u, v, _, _) in g.edge_table.items():
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    return adj


def cut_from_side(g: WeightedGraph, side) -> Cut:
    """Cut of ``g``'s original edges induced by one side of a bipartition."""
    side = frozenset(side)
    other = g.original_vertices - side
    if not side or not other:
        raise DegeneratePartitionError("both sides of a cut must be non-empty")
    if min(g.original_vertices) not in side:
        side, other = other, side
    ids, w, c = [], 0, 0
    for eid, (u, v, ew, ec) in g.edge_table.items():
        if (u in side) != (v in side):
            ids.append(eid)
            w += ew
            c += ec
    return Cut(frozenset(ids), w, c, side, other)


def evaluate_partition(g: WeightedGraph, side_of_vertex: Mapping) -> Cut:
    """Cut defined by a two-valued labelling of every original vertex."""
    missing = g.original_vertices - side_of_vertex.keys()
    if missing:
        raise GraphError(f"unlabelled vertices: {sorted(missing)}")
    labels = {side_of_vertex[v] for v in g.original_vertices}
    if len(labels) != 2:
        raise DegeneratePartitionError(
            f"expected exactly two side labels, got {len(labels)}")
    first = side_of_vertex[min(g.original_vertices)]
    return cut_from_side(g, (v for v in g.original_vertices if side_of_vertex[v] == first))


class CutChecker:
    """Reusable validity test for sets of original edges.

    Labels vertices by BFS over every original edge: an uncut edge forces
    the same side, a cut edge the opposite one.  A set is a cut iff the
    labelling is consistent and uses both sides.
    """

    def __init__(self, g: WeightedGraph, terminals=None):
        self.graph = g
        self.adj = _original_adjacency(g)
        self.terminals = terminals
        self.root = min(g.original_vertices)

    def side(self, cut_edges) -> Optional[frozenset]:
        """Side containing the lowest vertex, or None if ``cut_edges`` is not a cut."""
        adj = self.adj
        color = {self.root: 0}
        queue = deque((self.root,))
        while queue:
            x = queue.popleft()
            cx = color[x]
            for y, eid in adj[x]:
                want = cx ^ 1 if eid in cut_edges else cx
                cy = color.get(y)
                if cy is None:
                    color[y] = want
                    queue.append(y)
                elif cy != want:
                    return None
        if len(color) != len(adj):
            # disconnected original graph: unreachable vertices go with side A
            for v in adj:
                color.setdefault(v, 0)
        side = frozenset(v for v, cv in color.items() if cv == 0)
        if len(side) == len(adj):
            return None
        if self.terminals is not None:
            s, t = self.terminals
            if (s in side) == (t in side):
                return None
        return side

    def __call__(self, cut_edges) -> Optional[Cut]:
        side = self.side(cut_edges)
        return None if side is None else cut_from_side(self.graph, side)


def validate_cut(g: WeightedGraph, cut_edges, terminals=None) -> Optional[Cut]:
    """Cut whose edge set is exactly ``cut_edges``, or None if no bipartition has it.

    With ``terminals=(s, t)`` the two terminals must also end up on
    opposite sides.
    """
    unknown = set(cut_edges) - g.edge_table.keys()
    if unknown:
        raise GraphError(f"unknown edge ids: {sorted(unknown)}")
    return CutChecker(g, terminals)(frozenset(cut_edges))


def blocks(g: WeightedGraph) -> list[WeightedGraph]:
    """Biconnected components of a connected graph, as fresh graphs.

    Each original edge lands in exactly one block; bridges are single-edge
    blocks.  Blocks are ordered by their lowest original edge id.
    """
    g.require_connected()
    adj = g.adj
    root = min(adj)
    disc = {root: 0}
    low = {root: 0}
    counter = 1
    edge_stack = []
    found = []
    # iterative DFS; each frame is (vertex, parent, neighbour iterator)
    stack = [(root, None, iter(adj[root]))]
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if w == parent:
                continue
            if w not in disc:
                disc[w] = low[w] = counter
                counter += 1
                edge_stack.append((v, w))
                stack.append((w, v, iter(adj[w])))
                advanced = True
                break
            if disc[w] < disc[v]:
                edge_stack.append((v, w))
                low[v] = min(low[v], disc[w])
        if advanced:
            continue
        stack.pop()
        if parent is not None:
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                comp = []
                while True:
                    e = edge_stack.pop()
                    comp.append(e)
                    if e == (parent, v):
                        break
                found.append(comp)
    result = []
    for comp in found:
        ids = set()
        for u, v in comp:
            ids |= adj[u][v].origin
        result.append(g.edge_subgraph(sorted(ids)))
    result.sort(key=lambda b: min(b.edge_table))
    return result


def live_cut(g: WeightedGraph, live_side) -> Cut:
    """Cut of the live (possibly contracted) graph separating ``live_side``.

    Edge ids are the origins of the live crossing edges; the partition is
    expressed in original vertices.
    """
    live_side = set(live_side)
    if not live_side or len(live_side) == g.n:
        raise DegeneratePartitionError("both sides of a cut must be non-empty")
    ids, w, c = set(), 0, 0
    for u in live_side:
        for x, e in g.adj[u].items():
            if x not in live_side:
                ids |= e.origin
                w += e.weight
                c += e.cost
    side = frozenset().union(*(g.members[v] for v in live_side))
    other = frozenset().union(*(g.members[v] for v in g.adj if v not in live_side))
    if min(side | other) not in side:
        side, other = other, side
    return Cut(frozenset(ids), w, c, side, other)
