"""Multigraphs with first-class edge identities, plus the graph surgeries.

Vertices and edges are identified by integers. Loops and parallel edges are
ordinary edges; a loop contributes two edge-ends (and 2 to the degree) of its
vertex. Graphs are treated as values: every surgery returns a new graph and a
:class:`ReductionTrace` that can carry cycles of the result back to the input.

Splitting and expansion keep the ids of the edges they re-route, so a cycle of
the split/expanded graph is, edge for edge, a cycle of the original (after the
auxiliary expansion edge is dropped).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InvalidEdge, InvalidExpansion, InvalidSplit, NotACycle


class Multigraph:
    """Undirected multigraph; weights are optional non-negative integers."""

    __slots__ = ("_ends", "_inc", "_weights", "_next_edge", "_next_vertex")

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Mapping[int, tuple[int, int]] | None = None,
        weights: Mapping[int, int] | None = None,
    ):
        self._inc: dict[int, list[int]] = {}
        self._ends: dict[int, tuple[int, int]] = {}
        for v in vertices:
            self._inc.setdefault(int(v), [])
        for e, (u, v) in sorted((edges or {}).items()):
            self._inc.setdefault(u, [])
            self._inc.setdefault(v, [])
            self._ends[e] = (u, v)
            self._inc[u].append(e)
            self._inc[v].append(e)
        if weights is not None:
            unknown = set(weights) - set(self._ends)
            if unknown:
                raise InvalidEdge(f"weights given for unknown edges {sorted(unknown)}")
            if any(w < 0 for w in weights.values()):
                raise ValueError("edge weights must be non-negative")
            self._weights: dict[int, int] | None = {e: weights.get(e, 1) for e in self._ends}
        else:
            self._weights = None
        self._next_edge = max(self._ends, default=-1) + 1
        self._next_vertex = max(self._inc, default=-1) + 1

    @classmethod
    def from_pairs(cls, pairs, weights=None, vertices=()):
        """Edges numbered 0, 1, ... in the order given; weights as a list or a map."""
        edges = {i: (int(u), int(v)) for i, (u, v) in enumerate(pairs)}
        if weights is None:
            w = None
        elif isinstance(weights, Mapping):
            w = {int(i): int(x) for i, x in weights.items()}
        else:
            w = {i: int(x) for i, x in enumerate(weights)}
        return cls(vertices, edges, w)

    # ------------------------------------------------------------------ queries
    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self._inc))

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self._ends))

    @property
    def n(self) -> int:
        return len(self._inc)

    @property
    def m(self) -> int:
        return len(self._ends)

    @property
    def weighted(self) -> bool:
        return self._weights is not None

    def has_vertex(self, v) -> bool:
        return v in self._inc

    def has_edge(self, e) -> bool:
        return e in self._ends

    def ends(self, e: int) -> tuple[int, int]:
        try:
            return self._ends[e]
        except KeyError:
            raise InvalidEdge(f"no edge {e}") from None

    def weight(self, e: int) -> int:
        if e not in self._ends:
            raise InvalidEdge(f"no edge {e}")
        return 1 if self._weights is None else self._weights[e]

    def weights(self) -> dict[int, int]:
        return {e: self.weight(e) for e in self._ends}

    def total_weight(self, edges: Iterable[int] | None = None) -> int:
        if edges is None:
            edges = self._ends
        return sum(self.weight(e) for e in edges)

    def is_loop(self, e: int) -> bool:
        u, v = self.ends(e)
        return u == v

    def other_end(self, e: int, v: int) -> int:
        a, b = self.ends(e)
        if a == v:
            return b
        if b == v:
            return a
        raise InvalidEdge(f"edge {e} is not incident with {v}")

    def incident(self, v: int) -> list[int]:
        """Edge-ends at ``v`` as edge ids in ascending order; loops listed twice."""
        return sorted(self._inc[v])

    def degree(self, v: int) -> int:
        return len(self._inc[v])

    def degrees(self) -> dict[int, int]:
        return {v: len(es) for v, es in self._inc.items()}

    def neighbors(self, v: int) -> list[int]:
        return [self.other_end(e, v) for e in self.incident(v)]

    def edges_between(self, u: int, v: int) -> list[int]:
        return sorted(e for e in set(self._inc[u]) if self.other_end(e, u) == v)

    def edge_items(self):
        return sorted(self._ends.items())

    def components(self) -> list[list[int]]:
        """Vertex sets of connected components, each sorted, ordered by min id."""
        seen: set[int] = set()
        comps = []
        for s in sorted(self._inc):
            if s in seen:
                continue
            seen.add(s)
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for e in self._inc[x]:
                    y = self.other_end(e, x)
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_cubic(self) -> bool:
        return all(len(es) == 3 for es in self._inc.values())

    def min_degree(self) -> int:
        return min((len(es) for es in self._inc.values()), default=0)

    def max_degree(self) -> int:
        return max((len(es) for es in self._inc.values()), default=0)

    def parity_violations(self, edges: Iterable[int]) -> list[int]:
        """Vertices of odd degree in the spanning subgraph formed by ``edges``."""
        deg: Counter = Counter()
        for e in edges:
            u, v = self.ends(e)
            deg[u] += 1
            deg[v] += 1
        return sorted(v for v, d in deg.items() if d % 2)

    def is_even_subgraph(self, edges: Iterable[int]) -> bool:
        return not self.parity_violations(edges)

    def induced_subgraph(self, keep: Iterable[int]) -> "Multigraph":
        keep = set(keep)
        edges = {e: uv for e, uv in self._ends.items() if uv[0] in keep and uv[1] in keep}
        w = None if self._weights is None else {e: self._weights[e] for e in edges}
        g = Multigraph(keep, edges, w)
        g._next_edge = max(g._next_edge, self._next_edge)
        g._next_vertex = max(g._next_vertex, self._next_vertex)
        return g

    def edge_subgraph(self, edge_ids: Iterable[int]) -> "Multigraph":
        ids = set(edge_ids)
        edges = {e: self.ends(e) for e in ids}
        w = None if self._weights is None else {e: self._weights[e] for e in ids}
        g = Multigraph((), edges, w)
        g._next_edge = max(g._next_edge, self._next_edge)
        g._next_vertex = max(g._next_vertex, self._next_vertex)
        return g

    def with_weights(self, weights: Mapping[int, int] | None) -> "Multigraph":
        g = self._copy()
        if weights is None:
            g._weights = None
        else:
            g._weights = {e: int(weights.get(e, 1)) for e in g._ends}
        return g

    def relabeled(self, vmap: Mapping[int, int] | None = None,
                  emap: Mapping[int, int] | None = None) -> "Multigraph":
        vmap = vmap or {}
        emap = emap or {}
        edges = {emap.get(e, e): (vmap.get(u, u), vmap.get(v, v)) for e, (u, v) in self._ends.items()}
        w = None
        if self._weights is not None:
            w = {emap.get(e, e): x for e, x in self._weights.items()}
        return Multigraph([vmap.get(v, v) for v in self._inc], edges, w)

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return (set(self._inc) == set(other._inc) and self._ends == other._ends
                and self.weights() == other.weights())

    def __hash__(self):
        return hash((frozenset(self._inc), frozenset(self._ends.items())))

    def __repr__(self):
        return f"Multigraph(n={self.n}, m={self.m})"

    # ---------------------------------------------------- internal mutation
    # Only ever applied to a fresh copy inside a surgery.
    def _copy(self) -> "Multigraph":
        g = Multigraph.__new__(Multigraph)
        g._ends = dict(self._ends)
        g._inc = {v: list(es) for v, es in self._inc.items()}
        g._weights = None if self._weights is None else dict(self._weights)
        g._next_edge = self._next_edge
        g._next_vertex = self._next_vertex
        return g

    def _new_vertex(self) -> int:
        v = self._next_vertex
        self._next_vertex += 1
        self._inc[v] = []
        return v

    def _add_edge(self, u: int, v: int, weight: int | None = None) -> int:
        e = self._next_edge
        self._next_edge += 1
        self._ends[e] = (u, v)
        self._inc[u].append(e)
        self._inc[v].append(e)
        if weight is not None and self._weights is None:
            self._weights = {x: 1 for x in self._ends}
        if self._weights is not None:
            self._weights[e] = 1 if weight is None else weight
        return e

    def _remove_edge(self, e: int) -> None:
        u, v = self._ends.pop(e)
        self._inc[u].remove(e)
        self._inc[v].remove(e)
        if self._weights is not None:
            del self._weights[e]

    def _repoint(self, e: int, u: int, v: int) -> None:
        a, b = self._ends[e]
        self._inc[a].remove(e)
        self._inc[b].remove(e)
        self._ends[e] = (u, v)
        self._inc[u].append(e)
        self._inc[v].append(e)


# ---------------------------------------------------------------------- trace
@dataclass(frozen=True)
class SplitRecord:
    v: int
    first: int
    second: int
    new_vertex: int


@dataclass(frozen=True)
class ExpandRecord:
    v: int
    half: tuple[int, int]
    v1: int
    v2: int
    new_edge: int


@dataclass(frozen=True)
class SuppressRecord:
    vertex: int
    path: tuple[int, int]
    new_edge: int


@dataclass(frozen=True)
class ContractRecord:
    edges: frozenset
    before: Multigraph


@dataclass(frozen=True)
class DeleteRecord:
    edges: frozenset
    vertices: frozenset = frozenset()


@dataclass
class ReductionTrace:
    """Ordered surgery log from ``before`` to ``after``."""

    before: Multigraph
    after: Multigraph
    records: list = field(default_factory=list)

    @classmethod
    def empty(cls, g: Multigraph) -> "ReductionTrace":
        return cls(g, g, [])

    def then(self, other: "ReductionTrace") -> "ReductionTrace":
        if other.before is not self.after and other.before != self.after:
            raise ValueError("traces do not chain")
        return ReductionTrace(self.before, other.after, self.records + other.records)

    def __len__(self):
        return len(self.records)


def replay(g: Multigraph, records) -> Multigraph:
    """Re-apply surgery records to ``g``; used to check traces reproduce their result."""
    for r in records:
        if isinstance(r, SplitRecord):
            g, _ = split_ends(g, r.v, r.first, r.second)
        elif isinstance(r, ExpandRecord):
            g, _ = expand_ends(g, r.v, r.half)
        elif isinstance(r, SuppressRecord):
            g = _suppress_one(g, r.vertex)[0]
        elif isinstance(r, ContractRecord):
            g = contract_edges(g, r.edges)
        elif isinstance(r, DeleteRecord):
            g = delete_edges(g, r.edges, drop_vertices=r.vertices)
        else:  # pragma: no cover
            raise TypeError(r)
    return g


# ------------------------------------------------------------------ surgeries
def contract_with_map(g: Multigraph, es: Iterable[int]) -> tuple[Multigraph, dict[int, int]]:
    """Contract ``es``; also return the map old vertex -> representative (min id)."""
    es = set(es)
    for e in es:
        if not g.has_edge(e):
            raise InvalidEdge(f"cannot contract missing edge {e}")
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in es:
        a, b = (find(x) for x in g.ends(e))
        if a != b:
            lo, hi = min(a, b), max(a, b)
            parent[hi] = lo
    vmap = {v: find(v) for v in g.vertices}
    edges = {e: (vmap[u], vmap[v]) for e, (u, v) in g.edge_items() if e not in es}
    w = None if not g.weighted else {e: g.weight(e) for e in edges}
    h = Multigraph(set(vmap.values()), edges, w)
    h._next_edge = max(h._next_edge, g._next_edge)
    h._next_vertex = max(h._next_vertex, g._next_vertex)
    return h, vmap


def contract_edges(g: Multigraph, es: Iterable[int]) -> Multigraph:
    """G/E: identify the ends of every edge in ``es`` and drop those edges."""
    return contract_with_map(g, es)[0]


def identify(g: Multigraph, x: int, y: int) -> Multigraph:
    """Merge vertex ``x`` into ``y``; edges keep their ids, an x-y edge becomes a loop."""
    if x == y:
        return g
    h = g._copy()
    for e in g.incident(x):
        if not h.has_edge(e) or x not in h.ends(e):
            continue
        u, v = h.ends(e)
        h._repoint(e, y if u == x else u, y if v == x else v)
    del h._inc[x]
    return h


def contract_traced(g: Multigraph, es: Iterable[int]) -> tuple[Multigraph, ReductionTrace]:
    es = frozenset(es)
    h = contract_edges(g, es)
    return h, ReductionTrace(g, h, [ContractRecord(es, g)])


def delete_edges(g: Multigraph, es: Iterable[int], drop_vertices: Iterable[int] = ()) -> Multigraph:
    h = g._copy()
    for e in es:
        if not h.has_edge(e):
            raise InvalidEdge(f"cannot delete missing edge {e}")
        h._remove_edge(e)
    for v in drop_vertices:
        if h._inc[v]:
            raise InvalidEdge(f"vertex {v} still has edges")
        del h._inc[v]
    return h


def _suppress_one(g: Multigraph, x: int) -> tuple[Multigraph, SuppressRecord]:
    a, b = g.incident(x)
    u, v = g.other_end(a, x), g.other_end(b, x)
    h = g._copy()
    w = g.weight(a) + g.weight(b)
    h._remove_edge(a)
    h._remove_edge(b)
    del h._inc[x]
    c = h._add_edge(u, v, weight=w)
    return h, SuppressRecord(x, (a, b), c)


def is_suppressible(g: Multigraph, x: int) -> bool:
    es = g.incident(x)
    if len(es) != 2:
        return False
    a, b = es
    if a == b:  # a lone loop
        return False
    u, v = g.other_end(a, x), g.other_end(b, x)
    if u == v and g.degree(u) == 2:  # isolated digon: would leave a lone loop
        return False
    return True


def suppress_vertex(g: Multigraph, x: int) -> tuple[Multigraph, ReductionTrace]:
    if not is_suppressible(g, x):
        raise InvalidSplit(f"vertex {x} cannot be suppressed")
    h, rec = _suppress_one(g, x)
    return h, ReductionTrace(g, h, [rec])


def suppress_degree_two(g: Multigraph) -> tuple[Multigraph, ReductionTrace]:
    """Suppress degree-2 vertices (lowest id first) until none is suppressible.

    The replacing edge weighs the sum of the two edges it replaces, so the
    result is always weighted when anything was suppressed.
    """
    records = []
    h = g
    while True:
        x = next((v for v in h.vertices if is_suppressible(h, v)), None)
        if x is None:
            break
        h, rec = _suppress_one(h, x)
        records.append(rec)
    return h, ReductionTrace(g, h, records)


def split_ends(g: Multigraph, v: int, e1: int, e2: int) -> tuple[Multigraph, ReductionTrace]:
    """G.v1vv2 given the two edge-ends at ``v`` (edge ids) to split off.

    Edge ``e1`` is re-routed to join its far end to the new vertex ``x``, and
    ``e2`` to join ``x`` to its far end. For a loop the far end is ``v``
    itself, which reproduces the loop cases of the definition.
    """
    if e1 == e2:
        raise InvalidSplit("the two edge-ends must belong to distinct edges")
    for e in (e1, e2):
        if not g.has_edge(e) or v not in g.ends(e):
            raise InvalidSplit(f"edge {e} is not incident with vertex {v}")
    a, b = g.other_end(e1, v), g.other_end(e2, v)
    h = g._copy()
    x = h._new_vertex()
    h._repoint(e1, a, x)
    h._repoint(e2, x, b)
    return h, ReductionTrace(g, h, [SplitRecord(v, e1, e2, x)])


def split_off(g: Multigraph, v1: int, v: int, v2: int) -> tuple[Multigraph, ReductionTrace]:
    """G.v1vv2 by vertex names; uses the lowest-id edges vv1 and vv2."""
    first = [e for e in g.incident(v) if g.other_end(e, v) == v1] if g.has_vertex(v) else []
    if not first:
        raise InvalidSplit(f"no edge between {v} and {v1}")
    e1 = first[0]
    second = [e for e in g.incident(v) if g.other_end(e, v) == v2 and e != e1]
    if not second:
        raise InvalidSplit(f"no second edge between {v} and {v2}")
    return split_ends(g, v, e1, second[0])


def expand_ends(g: Multigraph, v: int, half: Iterable[int]) -> tuple[Multigraph, ReductionTrace]:
    """G:v:V1 with V1 given as two edge-ends at ``v``; new edge weighs 0 if weighted."""
    half = tuple(half)
    es = g.incident(v) if g.has_vertex(v) else []
    if len(es) != 4:
        raise InvalidExpansion(f"vertex {v} has degree {len(es)}, expected 4")
    if len(half) != 2 or half[0] == half[1] or any(e not in es for e in half):
        raise InvalidExpansion("half must name two distinct edges at v")
    if any(g.is_loop(e) for e in es):
        raise InvalidExpansion(f"vertex {v} carries a loop")
    h = g._copy()
    v1 = h._new_vertex()
    v2 = h._new_vertex()
    for e in es:
        target = v1 if e in half else v2
        h._repoint(e, g.other_end(e, v), target)
    del h._inc[v]
    z = h._add_edge(v1, v2, weight=0 if g.weighted else None)
    return h, ReductionTrace(g, h, [ExpandRecord(v, half, v1, v2, z)])


def expand(g: Multigraph, v: int, half: Iterable[int]) -> tuple[Multigraph, ReductionTrace]:
    """G:v:V1 with V1 a set of two neighbours of ``v``."""
    half = set(half)
    if not g.has_vertex(v) or g.degree(v) != 4:
        raise InvalidExpansion(f"vertex {v} must have degree 4")
    nbrs = g.neighbors(v)
    if len(set(nbrs)) != 4:
        raise InvalidExpansion(f"vertex {v} is incident with parallel edges or a loop")
    if len(half) != 2 or not half <= set(nbrs):
        raise InvalidExpansion("half must be two neighbours of v")
    chosen = [e for e in g.incident(v) if g.other_end(e, v) in half]
    return expand_ends(g, v, chosen)


def subdivide(g: Multigraph, e: int) -> tuple[Multigraph, int, int]:
    """Replace ``e`` by a path u-x-v. Returns (graph, new vertex, new edge).

    Edge ``e`` keeps its id as the u-x half; the x-v half is new.
    """
    u, v = g.ends(e)
    h = g._copy()
    x = h._new_vertex()
    h._repoint(e, u, x)
    f = h._add_edge(x, v, weight=0 if g.weighted else None)
    return h, x, f


# ---------------------------------------------------------------- lifting
def lift_cycle(trace: ReductionTrace, cycle: Iterable[int]) -> set[int]:
    """Carry an even edge set of ``trace.after`` back to ``trace.before``."""
    cycle = set(cycle)
    bad = trace.after.parity_violations(cycle)
    if bad:
        raise NotACycle(f"odd degree at vertices {bad}")
    for rec in reversed(trace.records):
        if isinstance(rec, SuppressRecord):
            if rec.new_edge in cycle:
                cycle.discard(rec.new_edge)
                cycle.update(rec.path)
        elif isinstance(rec, ExpandRecord):
            cycle.discard(rec.new_edge)
        elif isinstance(rec, ContractRecord):
            cycle = _restore_contracted(rec, cycle)
        # splits keep edge ids; deletions only shrink the graph
    assert trace.before.is_even_subgraph(cycle)
    return cycle


def _restore_contracted(rec: ContractRecord, cycle: set[int]) -> set[int]:
    g = rec.before
    odd = set(g.parity_violations(cycle))
    if not odd:
        return cycle
    # T-join inside a spanning forest of the contracted edges
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in sorted(rec.edges):
        u, v = g.ends(e)
        if u != v:
            adj.setdefault(u, []).append((e, v))
            adj.setdefault(v, []).append((e, u))
    seen: set[int] = set()
    extra: set[int] = set()
    for root in sorted(adj):
        if root in seen:
            continue
        order, parent = [], {root: None}
        seen.add(root)
        stack = [root]
        while stack:
            x = stack.pop()
            order.append(x)
            for e, y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    parent[y] = (e, x)
                    stack.append(y)
        for x in reversed(order):
            if x in odd and parent[x] is not None:
                e, p = parent[x]
                extra ^= {e}
                odd.discard(x)
                odd ^= {p}
    return cycle | extra


def suppressed_paths(trace: ReductionTrace) -> dict[int, list[int]]:
    """For every edge of ``trace.after``, the edges of ``trace.before`` it stands for.

    Only suppressions change the answer; other records are ignored.
    """
    paths = {e: [e] for e in trace.before.edge_ids}
    for rec in trace.records:
        if isinstance(rec, SuppressRecord):
            a, b = rec.path
            paths[rec.new_edge] = paths.pop(a) + paths.pop(b)
    return {e: paths[e] for e in trace.after.edge_ids}
