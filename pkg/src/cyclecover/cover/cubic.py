"""Cubic graphs: two covers from one rainbow 2-factor, keep the shorter (34m/21)."""
from __future__ import annotations

from ..errors import InvalidInput, LemmaViolation
from ..flows import BLUE, GREEN, RED
from ..multigraph import Multigraph, contract_edges
from ..rainbow import Circuit, RainbowColoring, rainbow_cubic
from .core import (CoverReport, CycleCover, best_local_triple, colour_classes, cover_problems, histogram,
                   recolour_monochromatic_circuits, three_cycles_intermezzo)
from .general import require_bridgeless

PAIRS = ((RED, GREEN), (RED, BLUE), (GREEN, BLUE))


def cover_a(g: Multigraph, circuits: list[Circuit], color: dict[int, int], weights: dict[int, int],
            diagnostics: dict, weighted_four: bool = False) -> list[set[int]]:
    """One colour pair per cycle; each circuit's arcs chosen to minimise overlap.

    With ``weighted_four`` the zero-overlap check applies to circuits with four
    weight-1 edges rather than to 4-circuits.
    """
    cl = colour_classes(color)
    classes = [cl[a] | cl[b] for a, b in PAIRS]
    cycles = [set(c) for c in classes]
    bad = diagnostics.setdefault("circuit_checks_failed", [])
    contrib = diagnostics.setdefault("circuit_contributions", [])
    for c in circuits:
        cost, (s1, s2, s3) = best_local_triple(g, c, classes, weights)
        inter = sum(weights[e] for e in s1 & s2)
        size = sum(weights[e] for e in c.edges)
        contrib.append((size, cost))
        if cost != size + 2 * inter:
            bad.append(f"identity fails on circuit {c.vertices}")
        ones = sum(1 for e in c.edges if weights[e] == 1)
        if (ones == 4 and all(weights[e] in (0, 1) for e in c.edges)) if weighted_four else len(c) == 4:
            if inter:
                bad.append(f"four-edge circuit {c.vertices} overlaps in {inter}")
        if not weighted_four and len(c) == 8 and inter > 1:
            bad.append(f"8-circuit {c.vertices} overlaps in {inter}")
        for cyc, s in zip(cycles, (s1, s2, s3)):
            cyc |= s
    return cycles


def cover_b(g: Multigraph, col: RainbowColoring, weights: dict[int, int]) -> list[set[int]]:
    """Recolour monochromatic circuits of G/F to blue, then take the three pair cycles."""
    h = contract_edges(g, col.factor.edge_ids)
    color = recolour_monochromatic_circuits(h, col.color)
    return three_cycles_intermezzo(g, col.factor.circuits, color, weights)


def cover_cubic(g: Multigraph) -> CoverReport:
    if not g.is_cubic():
        raise InvalidInput("graph must be cubic")
    require_bridgeless(g)
    w = g.weights()
    diag: dict = {"eight_cases": {}}
    a = [set(), set(), set()]
    b = [set(), set(), set()]
    lengths = []
    for comp in g.components():
        sub = g.induced_subgraph(comp)
        col = rainbow_cubic(sub)
        diag["eight_cases"].update(col.notes["eight_cases"])
        lengths.extend(len(c) for c in col.factor.circuits)
        for acc, part in ((a, cover_a(sub, col.factor.circuits, col.color, w, diag)), (b, cover_b(sub, col, w))):
            for x, y in zip(acc, part):
                x |= y
    if diag["circuit_checks_failed"]:
        raise LemmaViolation("; ".join(diag["circuit_checks_failed"]))
    return pick_shorter(g, "cubic", a, b, histogram(lengths), diag)


def pick_shorter(g: Multigraph, construction: str, a, b, hist, diag) -> CoverReport:
    ca, cb = CycleCover.build(g, a), CycleCover.build(g, b)
    for name, c in (("A", ca), ("B", cb)):
        problems = cover_problems(g, c.cycles)
        if problems:
            raise LemmaViolation(f"cover {name}: " + "; ".join(problems))
    diag["length_a"], diag["length_b"] = ca.total_length, cb.total_length
    won = "A" if ca.total_length <= cb.total_length else "B"
    return CoverReport(g, ca if won == "A" else cb, construction, g.total_weight(), hist, won, diag)
