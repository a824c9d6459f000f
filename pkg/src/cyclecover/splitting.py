"""Splitting off pairs of edge-ends without creating small odd cuts.

Each search tries the candidate pairs in the order the corresponding lemma
lists them and keeps the first whose result is still ``ell``-odd-connected.
Candidates are verified by recomputing the odd connectivity of the split
graph, never assumed. Edge-ends are named by edge ids, so parallel edges are
distinguishable.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .cuts import is_k_odd_connected
from .errors import InvalidParameter, LemmaViolation
from .multigraph import Multigraph, ReductionTrace, split_ends

STATS: Counter = Counter()


@dataclass
class SplitPlan:
    v: int
    candidates: list[tuple[int, int]]
    target: int
    chosen: int | None = None
    pairing: list[tuple[int, int]] = field(default_factory=list)
    case: int | None = None

    @property
    def chosen_pair(self):
        return None if self.chosen is None else self.candidates[self.chosen]


class SplitOutcome(NamedTuple):
    graph: Multigraph
    trace: ReductionTrace
    plan: SplitPlan


def first_valid_split(g: Multigraph, v: int, candidates: Sequence[tuple[int, int]],
                      ell: int = 5) -> SplitOutcome:
    plan = SplitPlan(v, list(candidates), ell)
    for i, (e1, e2) in enumerate(plan.candidates):
        if e1 == e2:
            continue
        h, tr = split_ends(g, v, e1, e2)
        STATS["checks"] += 1
        if is_k_odd_connected(h, ell):
            plan.chosen = i
            plan.pairing = [(e1, e2)]
            return SplitOutcome(h, tr, plan)
    STATS["violations"] += 1
    raise LemmaViolation(f"no candidate split at vertex {v} keeps the graph {ell}-odd-connected")


def _check_order(g: Multigraph, v: int, order: Sequence[int], degree: int) -> list[int]:
    order = list(order)
    if g.degree(v) != degree:
        raise InvalidParameter(f"vertex {v} has degree {g.degree(v)}, expected {degree}")
    if len(order) != degree or sorted(order) != g.incident(v):
        raise InvalidParameter("order must list every edge-end at v exactly once")
    return order


def split_preserving(g: Multigraph, v: int, ell: int, order: Sequence[int] | None = None) -> SplitOutcome:
    """Split a cyclically adjacent pair of ends at ``v`` keeping ``ell``-odd-connectivity.

    With ``ell == 3`` this preserves bridgelessness. Ends default to ascending
    edge-id order. If no adjacent pair works (a precondition breach) every pair
    is tried before giving up.
    """
    if ell % 2 == 0:
        raise InvalidParameter("ell must be odd")
    d = g.degree(v)
    if d in (2, ell) or d < 2:
        raise InvalidParameter(f"cannot split at a vertex of degree {d} for level {ell}")
    order = list(order) if order is not None else g.incident(v)
    if sorted(order) != g.incident(v):
        raise InvalidParameter("order must list every edge-end at v exactly once")
    k = len(order)
    adjacent = [(order[i], order[(i + 1) % k]) for i in range(k)]
    try:
        out = first_valid_split(g, v, adjacent, ell)
        STATS["split_preserving"] += 1
        return out
    except LemmaViolation:
        STATS["violations"] -= 1
    rest = [(order[i], order[j]) for i in range(k) for j in range(i + 1, k)
            if (order[i], order[j]) not in adjacent]
    out = first_valid_split(g, v, rest, ell)
    STATS["split_preserving_fallback"] += 1
    return out


def split_degree4(g: Multigraph, v: int, order: Sequence[int]) -> SplitOutcome:
    """Split (v1, v2) if that stays 5-odd-connected, otherwise (v2, v3)."""
    o = _check_order(g, v, order, 4)
    STATS["split_degree4"] += 1
    return first_valid_split(g, v, [(o[0], o[1]), (o[1], o[2])], 5)


def split_degree6(g: Multigraph, v: int, order: Sequence[int]) -> SplitOutcome:
    """First 5-odd-connected one of (v1, v2), (v2, v3), (v3, v4)."""
    o = _check_order(g, v, order, 6)
    STATS["split_degree6"] += 1
    return first_valid_split(g, v, [(o[0], o[1]), (o[1], o[2]), (o[2], o[3])], 5)


def split_consecutive(g: Multigraph, v: int, order: Sequence[int], count: int = 5) -> SplitOutcome:
    """First 5-odd-connected split among (v_i, v_i+1), i = 1..count, for degree >= 6."""
    o = list(order)
    if g.degree(v) < 6:
        raise InvalidParameter("needs degree at least 6")
    k = len(o)
    return first_valid_split(g, v, [(o[i], o[(i + 1) % k]) for i in range(count)], 5)


# Pairings of positions 0..7 for the four outcomes of the degree-8 reduction.
EIGHT_CASES = {
    1: ((0, 1), (2, 3), (4, 5), (6, 7)),
    2: ((0, 1), (2, 3), (4, 7), (5, 6)),
    3: ((0, 1), (2, 7), (3, 4), (5, 6)),
    4: ((0, 1), (2, 7), (3, 5), (4, 6)),
}


def _canon(pairing) -> frozenset:
    return frozenset(frozenset(p) for p in pairing)


def classify_eight_pairing(pairing) -> int:
    """Which of the four cases a pairing of positions 0..7 is, up to rotation/reflection."""
    target = _canon(pairing)
    for case, base in EIGHT_CASES.items():
        for r in range(8):
            for refl in (False, True):
                def f(i, r=r, refl=refl):
                    return ((-i if refl else i) + r) % 8
                if _canon([(f(a), f(b)) for a, b in base]) == target:
                    return case
    raise ValueError(f"pairing {sorted(map(sorted, target))} matches none of the four cases")


def split_degree8_chain(g: Multigraph, v: int, order: Sequence[int]) -> SplitOutcome:
    """Resolve a degree-8 vertex into four split pairs (the last left on ``v``).

    First finds a rotation where (v1, v2) splits off 5-odd-connectedly, then
    tries, in order: .v3vv4 followed by (v5,v6)|(v6,v7); .v7vv8 followed by the
    mirror choice; .v3vv8.v4vv5; .v3vv8.v4vv6. The final pairing is recorded in
    the plan, by positions in the original ``order``, with its case number.
    """
    o = _check_order(g, v, order, 8)
    STATS["split_degree8"] += 1
    first = first_valid_split(g, v, [(o[i], o[(i + 1) % 8]) for i in range(8)], 5)
    r = first.plan.chosen
    p = [o[(r + i) % 8] for i in range(8)]  # p[0], p[1] are now split
    pos = {e: (r + i) % 8 for i, e in enumerate(p)}
    g1, tr = first.graph, first.trace

    def finish(graph, trace, pairs):
        rest = [e for e in p if all(e not in q for q in pairs)]
        pairs = pairs + [tuple(rest)]
        idx = [(pos[a], pos[b]) for a, b in pairs]
        plan = SplitPlan(v, [], 5, chosen=0, pairing=pairs, case=classify_eight_pairing(idx))
        return SplitOutcome(graph, trace, plan)

    h, t = split_ends(g1, v, p[2], p[3])
    if is_k_odd_connected(h, 5):
        nxt = first_valid_split(h, v, [(p[4], p[5]), (p[5], p[6])], 5)
        return finish(nxt.graph, tr.then(t).then(nxt.trace), [(p[0], p[1]), (p[2], p[3]), nxt.plan.chosen_pair])
    h, t = split_ends(g1, v, p[6], p[7])
    if is_k_odd_connected(h, 5):
        nxt = first_valid_split(h, v, [(p[5], p[4]), (p[4], p[3])], 5)
        return finish(nxt.graph, tr.then(t).then(nxt.trace), [(p[0], p[1]), (p[6], p[7]), nxt.plan.chosen_pair])
    h, t = split_ends(g1, v, p[2], p[7])
    for a, b in ((p[3], p[4]), (p[3], p[5])):
        h2, t2 = split_ends(h, v, a, b)
        STATS["checks"] += 1
        if is_k_odd_connected(h2, 5):
            return finish(h2, tr.then(t).then(t2), [(p[0], p[1]), (p[2], p[7]), (a, b)])
    STATS["violations"] += 1
    raise LemmaViolation(f"degree-8 reduction failed at vertex {v}")
