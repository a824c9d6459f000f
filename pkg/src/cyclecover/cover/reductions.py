"""Parallel-edge reductions for graphs of minimum degree three.

Each reduction shrinks the graph and knows how to extend three cycles of the
smaller graph to three cycles of the larger one for a bounded extra length.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

from ..multigraph import (Multigraph, contract_with_map, delete_edges, is_suppressible, suppress_vertex)

STATS: Counter = Counter()

Cycles = list  # three edge sets
KINDS = ("leaf", "leaf-special", "inner", "suppress")


@dataclass
class Reduction:
    kind: str
    k: int
    v1: int
    v2: int
    edges: list[int]
    graph: Multigraph
    budget: int
    lift: Callable[[Cycles], Cycles] = field(repr=False)
    detail: dict = field(default_factory=dict)


def _pad(cycles) -> list[set[int]]:
    out = [set(c) for c in cycles]
    return out + [set() for _ in range(3 - len(out))]


def _replace(cycles: list[set[int]], f: int, path) -> list[set[int]]:
    for c in cycles:
        if f in c:
            c.discard(f)
            c.update(path)
    return cycles


def leaf_assignment(es: list[int]) -> list[list[int]]:
    """Edges per cycle for a bundle hanging off the rest: even k to one cycle, odd k split."""
    k = len(es)
    if k % 2 == 0:
        return [list(es), [], []]
    return [es[:-1], es[-2:], []]


# (odd cycles at v1, k parity) -> edge positions for the reordered cycles
# P1, P2, P3; "a:b" means e_a..e_b (1-based, inclusive, b relative to k).
INNER_TABLE = {
    (0, 1): ((1, -1), (-1, 0), None),
    (0, 0): ((1, 0), None, None),
    (1, 1): ((1, 0), None, None),
    (1, 0): ((1, -1), (-1, 0), None),
    (2, 1): ((1, 0), (0, 0), None),
    (2, 0): ((1, -1), (0, 0), None),
    (3, 1): ((1, -2), (-1, -1), (0, 0)),
    (3, 0): ((1, -1), (-1, -1), (0, 0)),
}


def _span(es: list[int], spec) -> list[int]:
    if spec is None:
        return []
    a, b = spec
    k = len(es)
    lo = a if a >= 1 else k + a
    hi = k + b
    return es[lo - 1:hi]


def inner_assignment(es: list[int], odd: list[bool]) -> list[list[int]]:
    """Which bundle edges each cycle receives, given which cycles are odd at v1."""
    k = len(es)
    i0 = sum(odd)
    order = [i for i in range(3) if odd[i]] + [i for i in range(3) if not odd[i]]
    row = INNER_TABLE[(i0, k % 2)]
    out: list[list[int]] = [[], [], []]
    for slot, spec in zip(order, row):
        out[slot] = _span(es, spec)
    return out


def _add(cycles: list[set[int]], parts: list[list[int]]) -> list[set[int]]:
    for c, p in zip(cycles, parts):
        c.symmetric_difference_update(p)
    return cycles


def _odd_at(g: Multigraph, v: int, cycles, ignore) -> list[bool]:
    ignore = set(ignore)
    out = []
    for c in cycles:
        deg = sum(1 for e in g.incident(v) if e in c and e not in ignore)
        out.append(deg % 2 == 1)
    return out


def _bundles(g: Multigraph):
    """Parallel classes as (u, w, edge ids) with u < w, lowest ids first."""
    seen = set()
    for u in sorted(g.vertices):
        for e in g.incident(u):
            w = g.other_end(e, u)
            if w <= u or (u, w) in seen:
                continue
            seen.add((u, w))
            es = g.edges_between(u, w)
            if len(es) >= 2:
                yield u, w, sorted(es)


def _try(kind: str, g: Multigraph, v1: int, v2: int, es: list[int]) -> Reduction | None:
    k = len(es)
    d1, d2 = g.degree(v1), g.degree(v2)
    if kind == "leaf" and k >= 3 and d1 == k and d2 >= k + 3:
        h = delete_edges(g, es, drop_vertices=[v1])

        def lift(cycles):
            return _add(_pad(cycles), leaf_assignment(es))
        return Reduction(kind, k, v1, v2, es, h, k + 1, lift)

    if kind == "leaf-special" and k >= 4 and d1 == k and d2 == k + 2:
        h = delete_edges(g, es, drop_vertices=[v1])
        if not is_suppressible(h, v2):
            return None
        path = h.incident(v2)
        h2, tr = suppress_vertex(h, v2)
        f = tr.records[0].new_edge

        def lift(cycles):
            return _add(_replace(_pad(cycles), f, path), leaf_assignment(es))
        return Reduction(kind, k, v1, v2, es, h2, k + 4, lift, {"new_edge": f})

    if kind == "inner" and k >= 2 and d1 >= k + 1 and d2 >= k + 2:
        h, _ = contract_with_map(g, es)

        def lift(cycles):
            cycles = _pad(cycles)
            return _add(cycles, inner_assignment(es, _odd_at(g, v1, cycles, es)))
        return Reduction(kind, k, v1, v2, es, h, k + 1, lift)

    if kind == "suppress" and k >= 3 and d1 == k + 1 and d2 == k + 1:
        h, vmap = contract_with_map(g, es)
        x = vmap[v1]
        if not is_suppressible(h, x):
            return None
        (a,) = [e for e in g.incident(v1) if e not in es]
        (b,) = [e for e in g.incident(v2) if e not in es]
        h2, tr = suppress_vertex(h, x)
        f = tr.records[0].new_edge

        def lift(cycles):
            cycles = _replace(_pad(cycles), f, (a, b))
            odd = [a in c for c in cycles]
            return _add(cycles, inner_assignment(es, odd))
        return Reduction(kind, k, v1, v2, es, h2, 6 if k == 3 else k + 4, lift, {"new_edge": f})
    return None


def reduce_parallel(g: Multigraph) -> Reduction | None:
    """First applicable reduction: kinds in fixed order, then bundles by vertex id.

    Both orientations of each bundle are tried, lower endpoint as v1 first.
    """
    bundles = list(_bundles(g))
    for kind in KINDS:
        for u, w, es in bundles:
            for v1, v2 in ((u, w), (w, u)):
                red = _try(kind, g, v1, v2, es)
                if red is not None:
                    return red
    return None


def irreducible_bundles(g: Multigraph) -> list[tuple[int, int, int]]:
    """(k, smaller degree, larger degree) for every parallel class."""
    return [(len(es), *sorted((g.degree(u), g.degree(w)))) for u, w, es in _bundles(g)]
