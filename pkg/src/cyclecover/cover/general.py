"""Three cycles of total length at most 5m/3 in any bridgeless graph."""
from __future__ import annotations

from ..cuts import find_bridges
from ..errors import LemmaViolation, NotBridgeless
from ..multigraph import Multigraph, ReductionTrace, delete_edges, lift_cycle, suppress_degree_two
from ..rainbow import find_2factor_5oc, rainbow_color
from ..splitting import split_preserving
from .core import CoverReport, CycleCover, cover_problems, histogram, sorted_colours, three_cycles_intermezzo


def require_bridgeless(g: Multigraph) -> None:
    bridges = find_bridges(g)
    if bridges:
        raise NotBridgeless(f"bridges: {sorted(bridges)}")


def split_down(g: Multigraph, max_degree: int, ell: int = 3) -> tuple[Multigraph, ReductionTrace]:
    """Split ends off every vertex above ``max_degree`` keeping ``ell``-odd-connectivity."""
    h, trace = g, ReductionTrace.empty(g)
    for v in sorted(g.vertices):
        while h.degree(v) > max_degree:
            out = split_preserving(h, v, ell)
            h, trace = out.graph, trace.then(out.trace)
    return h, trace


def circuit_components(g: Multigraph) -> tuple[list[set[int]], list[int]]:
    """Edge sets of the components that are circuits, and the other vertices."""
    circuits, rest = [], []
    for comp in g.components():
        if all(g.degree(v) == 2 for v in comp):
            circuits.append({e for v in comp for e in g.incident(v)})
        elif any(g.degree(v) for v in comp):
            rest.extend(comp)
    return circuits, rest


def cover_general(g: Multigraph) -> CoverReport:
    require_bridgeless(g)
    m = g.total_weight()
    cycles: list[set[int]] = [set(), set(), set()]
    loops = [e for e in g.edge_ids if g.is_loop(e)]
    cycles[0].update(loops)
    h, _ = split_down(delete_edges(g, loops), 3)
    circuits, rest = circuit_components(h)
    for c in circuits:
        cycles[0] |= c
    h = h.induced_subgraph(rest)
    g0, strace = suppress_degree_two(h)
    w = g0.weights()
    lengths = []
    for comp in g0.components():
        sub = g0.induced_subgraph(comp)
        f = find_2factor_5oc(sub, w, "maximize")
        col = rainbow_color(sub, f)
        lengths.extend(sum(w[e] for e in c.edges) for c in f.circuits)
        order = sorted_colours(col.color, w)
        for i, cyc in enumerate(three_cycles_intermezzo(sub, f.circuits, col.color, w, order)):
            cycles[i] |= lift_cycle(strace, cyc)
    cover = CycleCover.build(g, cycles)
    problems = cover_problems(g, cover.cycles)
    if problems:
        raise LemmaViolation("; ".join(problems))
    return CoverReport(g, cover, "general", m, histogram(lengths))
