"""Shared pieces of the cover constructions: covers, reports, arc partitions."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..errors import ParityViolation
from ..flows import BLUE, GREEN, RED
from ..multigraph import Multigraph
from ..rainbow import Circuit

BOUNDS = {
    "general": Fraction(5, 3),
    "cubic": Fraction(34, 21),
    "mindeg3": Fraction(44, 27),
}


@dataclass
class CycleCover:
    cycles: list[frozenset]
    total_length: int

    @classmethod
    def build(cls, g: Multigraph, cycles: Iterable[Iterable[int]]) -> "CycleCover":
        cs = [frozenset(c) for c in cycles if c]
        return cls(cs, sum(g.total_weight(c) for c in cs))

    def length(self, g: Multigraph) -> int:
        return sum(g.total_weight(c) for c in self.cycles)


@dataclass
class CoverReport:
    graph: Multigraph
    cover: CycleCover
    construction: str
    m: int
    d_histogram: dict[int, int] = field(default_factory=dict)
    won: str | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def bound(self) -> Fraction:
        return BOUNDS[self.construction]

    @property
    def bound_numerator(self) -> int:
        return self.bound.numerator

    @property
    def bound_denominator(self) -> int:
        return self.bound.denominator


def cover_problems(g: Multigraph, cycles: Sequence[Iterable[int]], max_cycles: int = 3) -> list[str]:
    """Everything wrong with ``cycles`` as a cover of ``g``; empty when valid."""
    problems = []
    if len(cycles) > max_cycles:
        problems.append(f"{len(cycles)} cycles, at most {max_cycles} allowed")
    covered: set[int] = set()
    for i, c in enumerate(cycles):
        c = set(c)
        unknown = sorted(e for e in c if not g.has_edge(e))
        if unknown:
            problems.append(f"cycle {i} uses unknown edges {unknown}")
            c -= set(unknown)
        for v in g.parity_violations(c):
            problems.append(f"cycle {i} has odd degree at vertex {v}")
        covered |= c
    for e in g.edge_ids:
        if e not in covered:
            problems.append(f"edge {e} is not covered")
    return problems


@dataclass
class BoundCheck:
    ok: bool
    length: int
    problems: list[str]

    def __bool__(self):
        return self.ok


def verify_bound(report: CoverReport) -> BoundCheck:
    """Recheck validity and ``den * length <= num * m`` in integers."""
    g = report.graph
    length = report.cover.length(g)
    problems = cover_problems(g, report.cover.cycles)
    if length != report.cover.total_length:
        problems.append(f"stored length {report.cover.total_length} != recomputed {length}")
    if report.m != g.total_weight():
        problems.append(f"stored m {report.m} != {g.total_weight()}")
    b = report.bound
    if b.denominator * length > b.numerator * g.total_weight():
        problems.append(f"length {length} exceeds {b} * {g.total_weight()}")
    return BoundCheck(not problems, length, problems)


# ---------------------------------------------------------------- arc classes
@dataclass
class ChordParityPartition:
    circuit: Circuit
    marked: frozenset
    part_a: frozenset
    part_b: frozenset


def odd_vertices(g: Multigraph, c: Circuit, edges) -> frozenset:
    """C(E): circuit vertices meeting an odd number of ends of ``edges``."""
    edges = set(edges)
    return frozenset(v for v in c.vertices if sum(1 for e in g.incident(v) if e in edges) % 2)


def chord_parity_partition(c: Circuit, marked, weights: Mapping[int, int] | None = None) -> ChordParityPartition:
    """Split the circuit's edges into the two arc classes switching at marked vertices.

    The lighter class (by weight, or edge count) becomes part A; on a tie,
    the class holding the lowest edge id.
    """
    marked = frozenset(marked)
    if not marked <= set(c.vertices):
        raise ParityViolation("marked vertices must lie on the circuit")
    if len(marked) % 2:
        raise ParityViolation(f"odd number ({len(marked)}) of marked vertices")
    cls = [0] * len(c.edges)
    for i in range(1, len(c.edges)):
        cls[i] = cls[i - 1] ^ (c.vertices[i] in marked)
    one = frozenset(e for e, k in zip(c.edges, cls) if k)
    zero = frozenset(e for e, k in zip(c.edges, cls) if not k)
    w = (lambda s: sum(weights[e] for e in s)) if weights is not None else len
    lowest = min(c.edges) if c.edges else None
    if (w(one), lowest not in one) < (w(zero), lowest not in zero):
        a, b = one, zero
    else:
        a, b = zero, one
    return ChordParityPartition(c, marked, a, b)


def colour_classes(color: Mapping[int, int]) -> dict[int, set[int]]:
    out = {RED: set(), GREEN: set(), BLUE: set()}
    for e, c in color.items():
        out[c].add(e)
    return out


def sorted_colours(color: Mapping[int, int], weights: Mapping[int, int]) -> tuple[int, int, int]:
    """Colours ordered by total weight, ties by red < green < blue."""
    tot = Counter()
    for e, c in color.items():
        tot[c] += weights[e]
    return tuple(sorted((RED, GREEN, BLUE), key=lambda c: (tot[c], c)))


def three_cycles_intermezzo(g: Multigraph, circuits: Sequence[Circuit], color: Mapping[int, int],
                            weights: Mapping[int, int], order=(RED, GREEN, BLUE)) -> list[set[int]]:
    """R+G with the A arcs, R+G with the B arcs, R+B with the A arcs.

    ``order`` names which colours play red, green and blue.
    """
    r, gr, b = order
    cl = colour_classes(color)
    rg = cl[r] | cl[gr]
    rb = cl[r] | cl[b]
    c1, c2, c3 = set(rg), set(rg), set(rb)
    for c in circuits:
        p = chord_parity_partition(c, odd_vertices(g, c, rg), weights)
        q = chord_parity_partition(c, odd_vertices(g, c, rb), weights)
        c1 |= p.part_a
        c2 |= p.part_b
        c3 |= q.part_a
    return [c1, c2, c3]


def best_local_triple(g: Multigraph, c: Circuit, classes, weights: Mapping[int, int]):
    """Arc sets for the three colour-pair cycles on one circuit, cheapest first.

    ``classes`` holds the three colour-pair edge sets. Each cycle gets one of
    its two arc classes; the three must cover every edge an odd number of
    times. Returns (cost, [S1, S2, S3]).
    """
    parts = [chord_parity_partition(c, odd_vertices(g, c, es), weights) for es in classes]
    whole = frozenset(c.edges)
    best = None
    for s1 in (parts[0].part_a, parts[0].part_b):
        for s2 in (parts[1].part_a, parts[1].part_b):
            s3 = s1 ^ s2 ^ whole
            assert s3 in (parts[2].part_a, parts[2].part_b)
            cost = sum(weights[e] for e in s1) + sum(weights[e] for e in s2) + sum(weights[e] for e in s3)
            if best is None or cost < best[0]:
                best = (cost, [s1, s2, s3])
    return best


def recolour_monochromatic_circuits(h: Multigraph, color: dict[int, int]) -> dict[int, int]:
    """Recolour red circuits of ``h`` blue until red is a forest, then the same for green."""
    color = dict(color)
    for colour in (RED, GREEN):
        while True:
            cyc = _find_circuit(h, sorted(e for e, c in color.items() if c == colour))
            if cyc is None:
                break
            for e in cyc:
                color[e] = BLUE
    return color


def _find_circuit(h: Multigraph, edges: list[int]) -> list[int] | None:
    """First circuit closed when adding ``edges`` in order to a forest."""
    adj: dict[int, list[tuple[int, int]]] = {}
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for e in edges:
        u, v = h.ends(e)
        if u == v:
            return [e]
        ru, rv = find(u), find(v)
        if ru == rv:
            path = _tree_path(adj, u, v)
            return path + [e]
        parent[ru] = rv
        adj.setdefault(u, []).append((e, v))
        adj.setdefault(v, []).append((e, u))
    return None


def _tree_path(adj, s, t) -> list[int]:
    prev = {s: None}
    stack = [s]
    while stack:
        x = stack.pop()
        if x == t:
            break
        for e, y in adj.get(x, []):
            if y not in prev:
                prev[y] = (e, x)
                stack.append(y)
    out = []
    x = t
    while prev[x] is not None:
        e, x = prev[x]
        out.append(e)
    return out


def histogram(lengths: Iterable[int]) -> dict[int, int]:
    return dict(sorted(Counter(lengths).items()))
