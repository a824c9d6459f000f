"""Minimum degree three: at most three cycles of total length at most 44m/27.

Parallel bundles are reduced away first. What is left is split down to
maximum degree four, every degree-4 vertex is expanded by a weight-0 edge and
the degree-2 vertices are suppressed, giving a weighted cubic graph. Its
rainbow 2-factor yields two covers and the shorter one is lifted back.
"""
from __future__ import annotations

from collections import Counter

from ..cuts import is_bridgeless
from ..errors import InvalidInput, LemmaViolation
from ..multigraph import (ExpandRecord, Multigraph, SplitRecord, contract_edges, delete_edges, expand_ends,
                          identify, suppress_degree_two, suppress_vertex, suppressed_paths)
from ..rainbow import _circuits, rainbow_mindegree
from .core import (CoverReport, CycleCover, cover_problems, histogram, recolour_monochromatic_circuits,
                   three_cycles_intermezzo)
from .cubic import cover_a
from .general import circuit_components, require_bridgeless, split_down
from .reductions import STATS, leaf_assignment, reduce_parallel


def cover_mindeg3(g: Multigraph) -> CoverReport:
    if g.n and g.min_degree() < 3:
        raise InvalidInput(f"minimum degree is {g.min_degree()}, need at least 3")
    require_bridgeless(g)
    g = g.with_weights(None)
    diag: dict = {"reductions": [], "bases": [], "loops": Counter()}
    cycles = _solve(g, diag)
    cover = CycleCover.build(g, cycles)
    problems = cover_problems(g, cover.cycles)
    if problems:
        raise LemmaViolation("; ".join(problems))
    hist = Counter()
    for b in diag["bases"]:
        hist.update(b["lengths"])
    wins = {b["won"] for b in diag["bases"] if b["won"]}
    won = wins.pop() if len(wins) == 1 else ("A+B" if wins else None)
    return CoverReport(g, cover, "mindeg3", g.m, histogram(hist.elements()), won, diag)


def _length(cycles) -> int:
    return sum(len(c) for c in cycles)


def _merge(into: list[set[int]], parts) -> None:
    for c, p in zip(into, parts):
        c |= p


def _solve(g: Multigraph, diag: dict) -> list[set[int]]:
    comps = [c for c in g.components() if any(g.degree(v) for v in c)]
    if len(comps) > 1:
        out = [set(), set(), set()]
        for comp in comps:
            _merge(out, _solve(g.induced_subgraph(comp), diag))
        return out
    if not comps:
        return [set(), set(), set()]

    loops = [e for e in g.edge_ids if g.is_loop(e)]
    if loops:
        return _drop_loop(g, loops[0], diag)

    if g.n == 2:
        es = list(g.edge_ids)
        diag["bases"].append({"kind": "dipole", "k": len(es), "won": None, "lengths": []})
        return [set(p) for p in leaf_assignment(es)]

    red = reduce_parallel(g)
    if red is not None:
        assert red.graph.m < g.m
        sub = _solve(red.graph, diag)
        lifted = red.lift([set(c) for c in sub])
        extra = _length(lifted) - _length(sub)
        diag["reductions"].append({"kind": red.kind, "k": red.k, "extra": extra, "budget": red.budget})
        STATS[red.kind] += 1
        if extra > red.budget:
            STATS["over_budget"] += 1
            raise LemmaViolation(f"{red.kind} reduction (k={red.k}) added {extra} > {red.budget}")
        return lifted
    return _base(g, diag)


def _drop_loop(g: Multigraph, e: int, diag: dict) -> list[set[int]]:
    """Remove one loop; a degree-4 host is then suppressed."""
    (v, _) = g.ends(e)
    h = delete_edges(g, [e])
    if h.degree(v) == 2:
        path = h.incident(v)
        if path[0] == path[1]:  # a second loop: lone vertex
            diag["loops"]["lone"] += 1
            return [{e, path[0]}, set(), set()]
        h, tr = suppress_vertex(h, v)
        f = tr.records[0].new_edge
        diag["loops"]["degree4"] += 1
        sub = _solve(h, diag)
        for c in sub:
            if f in c:
                c.discard(f)
                c.update(path)
    else:
        diag["loops"]["high_degree"] += 1
        sub = _solve(h, diag) if h.m else [set(), set(), set()]
    sub[0].add(e)
    return sub


def _base(g: Multigraph, diag: dict) -> list[set[int]]:
    """Split, expand, suppress, colour; return the shorter of the two covers."""
    h, strace = split_down(g, 4)
    origin = {v: v for v in g.vertices}
    for rec in strace.records:
        if isinstance(rec, SplitRecord):
            origin[rec.new_vertex] = origin[rec.v]
    h = h.with_weights({})
    for v in sorted(h.vertices):
        if h.degree(v) != 4:
            continue
        es = h.incident(v)
        for half in ((es[0], es[1]), (es[1], es[2]), (es[0], es[2])):
            h2, t = expand_ends(h, v, half)
            if is_bridgeless(h2):
                break
        else:
            raise LemmaViolation(f"no bridgeless expansion at vertex {v}")
        rec: ExpandRecord = t.records[0]
        origin[rec.v1] = origin[rec.v2] = origin[v]
        h = h2
    # splitting can cut off bare circuits; they go to the first cycle whole
    loose, rest = circuit_components(h)
    loose_edges = set().union(*loose) if loose else set()
    if loose:
        diag["loops"]["split_circuits"] += len(loose)
        if not rest:
            diag["bases"].append({"kind": "circuits", "won": None, "lengths": []})
            return [loose_edges, set(), set()]
        h = h.induced_subgraph(rest)
    g0 = h
    w0 = g0.weights()
    g0p, sup = suppress_degree_two(g0)
    if not g0p.is_cubic():
        raise LemmaViolation("suppressed graph is not cubic")
    paths = suppressed_paths(sup)
    wp = g0p.weights()
    f0: set[int] = set()
    color0: dict[int, int] = {}
    lengths, shapes, swaps = [], Counter(), 0
    for comp in g0p.components():
        sub = g0p.induced_subgraph(comp)
        col = rainbow_mindegree(sub, wp)
        shapes.update(col.notes["shapes"].values())
        swaps += col.notes["swaps"]
        lengths.extend(sum(wp[e] for e in c.edges) for c in col.factor.circuits)
        for e in col.factor.edge_ids:
            f0.update(paths[e])
        for e, c in col.color.items():
            for x in paths[e]:
                color0[x] = c
    circuits = _circuits(g0, f0)
    local: dict = {}
    a = cover_a(g0, circuits, color0, w0, local, weighted_four=True)
    if local["circuit_checks_failed"]:
        raise LemmaViolation("; ".join(local["circuit_checks_failed"]))

    # second cover: fold stray degree-2 vertices onto a representative of their origin
    on_f = {v for c in circuits for v in c.vertices}
    rep: dict[int, int] = {}
    for v in sorted(g0.vertices):
        if g0.degree(v) == 3:
            rep.setdefault(origin[v], v)
    g2 = g0
    for x in sorted(g0.vertices):
        if g0.degree(x) == 2 and x not in on_f:
            g2 = identify(g2, x, rep[origin[x]])
    hq = contract_edges(g2, f0)
    color_b = recolour_monochromatic_circuits(hq, color0)
    b = three_cycles_intermezzo(g2, circuits, color_b, w0)

    # A is even on G0 and B on G''; both are even once every descendant of a
    # vertex is merged back, and the weight-0 expansion edges are the only
    # edges not in g
    for c in a:
        if not g0.is_even_subgraph(c):
            raise LemmaViolation("first cover is not even on the expanded graph")
    for c in b:
        if not g2.is_even_subgraph(c):
            raise LemmaViolation("second cover is not even on the identified graph")
    out = []
    for cyc in (a, b):
        lifted = [{e for e in c if g.has_edge(e)} for c in cyc]
        if not all(g.is_even_subgraph(c) for c in lifted):
            raise LemmaViolation("lifted cover is not even")
        lifted[0] |= loose_edges
        out.append(lifted)
    la, lb = _length(out[0]), _length(out[1])
    won = "A" if la <= lb else "B"
    diag["bases"].append({"kind": "pipeline", "won": won, "length_a": la, "length_b": lb, "m": g.m,
                          "lengths": lengths, "shapes": dict(shapes), "swaps": swaps,
                          "contributions": local["circuit_contributions"]})
    return out[0] if won == "A" else out[1]
