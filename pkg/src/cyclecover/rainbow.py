"""Rainbow 2-factors: a 2-factor F with G/F 5-odd-connected whose complement
carries a three-colouring read off a nowhere-zero Z2^2-flow of G/F.

The contracted graph is always built with every edge subdivided, so each
edge-end at a circuit vertex is its own edge. Splittings are then done on
these ends in circuit order, which is what forces equal colours on the
paired ends.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .cuts import is_k_odd_connected
from .errors import (AmbiguousPattern, Infeasible, InvalidComparison, InvalidInput,
                     LemmaViolation)
from .flows import (BLUE, GREEN, RED, FlowAssignment, VertexConstraint,
                    find_nowhere_zero_flow, repair_flow)
from .multigraph import Multigraph, contract_edges
from .splitting import (first_valid_split, split_consecutive, split_degree4,
                        split_degree6, split_degree8_chain)

LETTER = {RED: "R", GREEN: "G", BLUE: "B"}
MATCHING_LIMIT = 500_000


@dataclass
class Circuit:
    vertices: list[int]
    edges: list[int]  # edges[i] joins vertices[i] and vertices[i+1]

    def __len__(self):
        return len(self.edges)


@dataclass
class TwoFactor:
    edge_ids: frozenset
    circuits: list[Circuit]

    def lengths(self) -> Counter:
        return Counter(len(c) for c in self.circuits)


@dataclass
class RainbowColoring:
    graph: Multigraph
    factor: TwoFactor
    color: dict[int, int]
    notes: dict = field(default_factory=dict)

    def edges_of(self, colour: int) -> set[int]:
        return {e for e, c in self.color.items() if c == colour}


# ------------------------------------------------------------ 2-factors
def _circuits(g: Multigraph, f_edges) -> list[Circuit]:
    f_edges = set(f_edges)
    at: dict[int, list[int]] = {}
    for e in sorted(f_edges):
        u, v = g.ends(e)
        at.setdefault(u, []).append(e)
        at.setdefault(v, []).append(e)
    seen: set[int] = set()
    out = []
    for start in sorted(at):
        if start in seen:
            continue
        # second vertex: the lower-id neighbour, lowest edge id on ties
        first = min(at[start], key=lambda e: (g.other_end(e, start), e))
        verts, edges = [start], [first]
        seen.add(start)
        cur, prev_e = g.other_end(first, start), first
        while cur != start:
            seen.add(cur)
            verts.append(cur)
            nxt = next(e for e in at[cur] if e != prev_e)
            edges.append(nxt)
            cur, prev_e = g.other_end(nxt, cur), nxt
        out.append(Circuit(verts, edges))
    return out


def two_factor_from_matching(g: Multigraph, matching) -> TwoFactor:
    f = frozenset(e for e in g.edge_ids if e not in set(matching))
    return TwoFactor(f, _circuits(g, f))


def perfect_matchings(g: Multigraph, limit: int = MATCHING_LIMIT) -> Iterator[frozenset]:
    """All perfect matchings, branching on the lowest unmatched vertex."""
    matched: set[int] = set()
    chosen: list[int] = []
    count = [0]
    verts = sorted(g.vertices)

    def rec(i):
        while i < len(verts) and verts[i] in matched:
            i += 1
        if i == len(verts):
            count[0] += 1
            if count[0] > limit:
                raise InvalidInput("too many perfect matchings to enumerate")
            yield frozenset(chosen)
            return
        u = verts[i]
        for e in sorted(set(g.incident(u))):
            w = g.other_end(e, u)
            if w == u or w in matched:
                continue
            matched.update((u, w))
            chosen.append(e)
            yield from rec(i + 1)
            chosen.pop()
            matched.difference_update((u, w))

    yield from rec(0)


def contract_factor(g: Multigraph, f: TwoFactor) -> Multigraph:
    return contract_edges(g, f.edge_ids)


def find_2factor_5oc(g: Multigraph, weights: Mapping[int, int] | None = None,
                     objective: str = "minimize") -> TwoFactor:
    """2-factor F with G/F 5-odd-connected, optimising the weight of F.

    Perfect matchings are enumerated, ordered by the weight of the resulting
    2-factor and checked lazily. Ties go to the lexicographically smallest
    matching.
    """
    if objective not in ("minimize", "maximize"):
        raise InvalidInput(f"unknown objective {objective!r}")
    if not g.is_cubic():
        raise InvalidInput("graph must be cubic")
    w = dict(weights) if weights is not None else g.weights()
    total = sum(w[e] for e in g.edge_ids)
    sign = 1 if objective == "minimize" else -1
    matchings = list(perfect_matchings(g))
    if not matchings:
        raise Infeasible("graph has no perfect matching")
    matchings.sort(key=lambda mt: (sign * (total - sum(w[e] for e in mt)), sorted(mt)))
    for mt in matchings:
        f = frozenset(e for e in g.edge_ids if e not in mt)
        if is_k_odd_connected(contract_edges(g, f), 5):
            fw = sum(w[e] for e in f)
            ok = 3 * fw <= 2 * total if objective == "minimize" else 3 * fw >= 2 * total
            if not ok:
                raise LemmaViolation(f"best 5-odd-connected 2-factor has weight {fw} of {total}")
            return TwoFactor(f, _circuits(g, f))
    raise LemmaViolation("no 2-factor with a 5-odd-connected contraction")


# ------------------------------------------------------------ patterns
def pattern_of(circuit, coloring: RainbowColoring) -> str:
    """Colour letters of the non-factor edges at the circuit's vertices, in order."""
    g, f = coloring.graph, coloring.factor.edge_ids
    verts = circuit.vertices if isinstance(circuit, Circuit) else list(circuit)
    out = []
    for v in verts:
        outside = [e for e in g.incident(v) if e not in f]
        if len(outside) != 1:
            raise AmbiguousPattern(f"vertex {v} has {len(outside)} non-factor ends")
        out.append(LETTER[coloring.color[outside[0]]])
    return "".join(out)


def _relabel(p: str) -> str:
    names: dict[str, str] = {}
    out = []
    for ch in p:
        if ch == "x":
            out.append("x")
            continue
        if ch not in names:
            names[ch] = "RGB"[len(names)]
        out.append(names[ch])
    return "".join(out)


def canonical_pattern(p: str) -> str:
    k = len(p)
    forms = []
    for q in (p, p[::-1]):
        for r in range(k):
            forms.append(_relabel(q[r:] + q[:r]))
    return min(forms)


def patterns_symmetric(p: str, q: str) -> bool:
    if len(p) != len(q):
        raise InvalidComparison("patterns have different lengths")
    return canonical_pattern(p) == canonical_pattern(q)


def pattern_compatible(p: str, template: str) -> bool:
    """Position-wise match with x as wildcard, up to renaming the colours."""
    if len(p) != len(template):
        raise InvalidComparison("patterns have different lengths")
    fwd: dict[str, str] = {}
    back: dict[str, str] = {}
    for a, t in zip(p, template):
        if t == "x":
            continue
        if fwd.setdefault(a, t) != t or back.setdefault(t, a) != a:
            return False
    return True


FOUR_PATTERNS = ("RRRR", "RRGG")
EIGHT_PATTERNS = (
    "RRRRRRRR", "RRRRRRGG", "RRRRGGGG", "RRRRGGBB", "RRGGRRGG", "RRGGRRBB",
    "RRRRGRRG", "RRRRGBBG", "RRGGRGGR", "RRGGRBBR", "RRGGBRRB", "RRRRGRGR",
    "RRRGBGBR", "RRGRGRGG", "RRGRBRBG", "RRGGBGBG",
)
_EIGHT_CANON = {canonical_pattern(p) for p in EIGHT_PATTERNS}


def check_cubic_patterns(coloring: RainbowColoring) -> list[str]:
    problems = []
    for c in coloring.factor.circuits:
        if len(c) == 3:
            problems.append(f"circuit of length 3 at {c.vertices}")
        elif len(c) == 4:
            p = pattern_of(c, coloring)
            if not any(patterns_symmetric(p, q) for q in FOUR_PATTERNS):
                problems.append(f"4-circuit {c.vertices} has pattern {p}")
        elif len(c) == 8:
            p = pattern_of(c, coloring)
            if canonical_pattern(p) not in _EIGHT_CANON:
                problems.append(f"8-circuit {c.vertices} has pattern {p}")
    return problems


def rainbow_parity_violations(coloring: RainbowColoring) -> list[str]:
    g, f = coloring.graph, coloring.factor.edge_ids
    problems = []
    for c in coloring.factor.circuits:
        for colour in (RED, GREEN, BLUE):
            touched = sum(1 for v in c.vertices
                          if any(coloring.color.get(e) == colour for e in g.incident(v) if e not in f))
            if touched % 2 != len(c) % 2:
                problems.append(f"circuit {c.vertices}: {touched} vertices meet {LETTER[colour]}")
    return problems


# ------------------------------------------------------------ contraction
@dataclass
class _Host:
    """G/F with every edge subdivided, plus the map (edge, end vertex) -> H edge."""
    h: Multigraph
    circuit_of: dict[int, int]
    end_edge: dict[tuple[int, int], int]


def _subdivided_contraction(g: Multigraph, f: TwoFactor) -> _Host:
    circuit_of = {v: i for i, c in enumerate(f.circuits) for v in c.vertices}
    k = len(f.circuits)
    edges: dict[int, tuple[int, int]] = {}
    end_edge: dict[tuple[int, int], int] = {}
    for idx, e in enumerate(sorted(set(g.edge_ids) - f.edge_ids)):
        a, b = g.ends(e)
        x = k + idx
        edges[2 * idx] = (circuit_of[a], x)
        edges[2 * idx + 1] = (x, circuit_of[b])
        end_edge[(e, a)] = 2 * idx
        end_edge[(e, b)] = 2 * idx + 1
    h = Multigraph(range(k + len(edges) // 2), edges)
    return _Host(h, circuit_of, end_edge)


def _outer_edge(g: Multigraph, f: TwoFactor, v: int) -> int:
    (e,) = [e for e in g.incident(v) if e not in f.edge_ids]
    return e


def _read_colors(g: Multigraph, f: TwoFactor, host: _Host, flow: FlowAssignment) -> dict[int, int]:
    colors = {}
    for (e, a), he in host.end_edge.items():
        colors.setdefault(e, flow[he])
        assert colors[e] == flow[he]
    return colors


def rainbow_color(g: Multigraph, f: TwoFactor) -> RainbowColoring:
    """Colour the complement of f from a nowhere-zero flow of the contraction."""
    host = _subdivided_contraction(g, f)
    flow = find_nowhere_zero_flow(host.h)
    col = RainbowColoring(g, f, _read_colors(g, f, host, flow))
    _assert_parity(col)
    return col


def _assert_parity(col: RainbowColoring) -> None:
    problems = rainbow_parity_violations(col)
    if problems:
        raise LemmaViolation("rainbow parity fails: " + "; ".join(problems))


def _circuit_order(g, f, host, c: Circuit) -> list[int]:
    return [host.end_edge[(_outer_edge(g, f, v), v)] for v in c.vertices]


def rainbow_cubic(g: Multigraph) -> RainbowColoring:
    """Rainbow 2-factor with the 4-circuit and 8-circuit pattern guarantees."""
    _require_cubic_bridgeless(g)
    f = find_2factor_5oc(g)
    host = _subdivided_contraction(g, f)
    h = host.h
    cases = {}
    for i, c in enumerate(f.circuits):
        if len(c) == 4:
            h = split_degree4(h, i, _circuit_order(g, f, host, c)).graph
        elif len(c) == 8:
            out = split_degree8_chain(h, i, _circuit_order(g, f, host, c))
            h = out.graph
            cases[i] = out.plan.case
    if any(h.degree(v) in (4, 8) for v in range(len(f.circuits))):
        raise LemmaViolation("degree-4 or degree-8 vertex left after splitting")
    assert is_k_odd_connected(h, 5)
    flow = find_nowhere_zero_flow(h)
    col = RainbowColoring(g, f, _read_colors(g, f, host, flow), {"eight_cases": cases})
    _assert_parity(col)
    problems = check_cubic_patterns(col)
    if problems:
        raise LemmaViolation("; ".join(problems))
    return col


def _require_cubic_bridgeless(g: Multigraph) -> None:
    if not g.is_cubic():
        raise InvalidInput("graph must be cubic")
    if not is_k_odd_connected(g, 3):
        raise InvalidInput("graph must be bridgeless")


# ------------------------------------------------------------ min-degree variant
# zero-weight circuit edge positions (1-based, edge i joins v_i and v_i+1)
SHAPES = {
    "4": (4, ()),
    "5": (5, (4,)),
    "6a": (6, (3, 5)),
    "6b": (6, (2, 5)),
    "7": (7, (2, 4, 6)),
    "8": (8, (1, 3, 5, 7)),
}

CLAUSES = {
    "4": (True, ("RRxx", "xRRx")),
    "5": (True, ("RxGxx", "RRRGB")),
    "6a": (True, ("xxRRxx", "xxxxRR", "xxRGGR", "xRxGGR")),
    "6b": (False, ("RRGRRG", "RRGRGR", "RGRRRG", "RGRRGR")),
    "7": (True, ("xRRxxxx", "xxxRRxx", "xxxxxRR", "xRGxxRB", "xRGxxBR", "xRGxxGB",
                 "xRGxxBG", "xxxRGRG", "xxxRGGR")),
    "8": (True, ("RRxxxxxx", "xxRRxxxx", "xxxxRRxx", "xxxxxxRR", "RGGRxxxx", "xxRGGRxx",
                 "xxxxRGGR", "GRxxxxRG")),
}


def clause_holds(shape: str, pattern: str) -> bool:
    positive, templates = CLAUSES[shape]
    hit = any(pattern_compatible(pattern, t) for t in templates)
    return hit if positive else not hit


def circuit_shape(c: Circuit, weights: Mapping[int, int]) -> tuple[str, Circuit] | None:
    """Shape name and the circuit rotated to its canonical position, if special.

    Special circuits have exactly four weight-1 edges and otherwise only
    weight-0 edges. The lowest rotation matching a shape wins.
    """
    ws = [weights[e] for e in c.edges]
    if sum(1 for x in ws if x == 1) != 4 or any(x not in (0, 1) for x in ws):
        return None
    k = len(c)
    for name, (length, zeros) in SHAPES.items():
        if length != k:
            continue
        for r in range(k):
            verts = c.vertices[r:] + c.vertices[:r]
            edges = c.edges[r:] + c.edges[:r]
            if {i + 1 for i, e in enumerate(edges) if weights[e] == 0} == set(zeros):
                return name, Circuit(verts, edges)
    return None


def rainbow_mindegree(g: Multigraph, weights: Mapping[int, int] | None = None) -> RainbowColoring:
    """Rainbow 2-factor of weight at most 2w0/3 with positional pattern clauses.

    Weight-0 edges must form a matching. Circuits made of four weight-1 edges
    and up to four weight-0 edges get the splittings and constraint sets that
    force their clause; every such clause is checked on the result.
    """
    _require_cubic_bridgeless(g)
    w = dict(weights) if weights is not None else g.weights()
    for v in g.vertices:
        if sum(1 for e in g.incident(v) if w[e] == 0) > 1:
            raise InvalidInput(f"two weight-0 edges meet at vertex {v}")
    f = find_2factor_5oc(g, w, "minimize")
    host = _subdivided_contraction(g, f)
    h = host.h
    constraints: list[VertexConstraint] = []
    shapes: dict[int, tuple[str, Circuit]] = {}
    for i, c in enumerate(f.circuits):
        found = circuit_shape(c, w)
        if found is None:
            continue
        name, rc = found
        shapes[i] = found
        e = [None] + _circuit_order(g, f, host, rc)  # 1-based e[1..k]
        h, con = _apply_shape(h, i, name, e)
        if con is not None:
            constraints.append(con)
    assert is_k_odd_connected(h, 5)
    flow = find_nowhere_zero_flow(h)
    history: list[int] = []
    flow = repair_flow(h, flow, constraints, history)
    col = RainbowColoring(g, f, _read_colors(g, f, host, flow),
                          {"shapes": {i: s for i, (s, _) in shapes.items()}, "swaps": len(history) - 1})
    _assert_parity(col)
    failures = []
    for i, (name, rc) in shapes.items():
        p = pattern_of(rc, col)
        if not clause_holds(name, p):
            failures.append(f"circuit {rc.vertices} ({name}) has pattern {p}")
    col.notes["clause_failures"] = failures
    if failures:
        raise LemmaViolation("; ".join(failures))
    return col


def _apply_shape(h: Multigraph, w: int, name: str, e: Sequence[int]):
    if name == "4":
        return split_degree4(h, w, e[1:5]).graph, None
    if name == "5":
        return h, VertexConstraint(w, (e[1], e[3], e[5]), (e[1], e[3], e[4]))
    if name == "6a":
        out = split_degree6(h, w, [e[3], e[4], e[5], e[6], e[1], e[2]])
        h = out.graph
        if out.plan.chosen_pair == (e[4], e[5]):
            h = split_degree4(h, w, [e[2], e[6], e[3], e[1]]).graph
        return h, None
    if name == "6b":
        return h, VertexConstraint(w, (e[2], e[3]), (e[5], e[6]), (e[1], e[4]))
    if name == "7":
        out = split_consecutive(h, w, [e[2], e[3], e[4], e[5], e[6], e[7], e[1]], 5)
        pair = out.plan.chosen_pair
        if pair == (e[3], e[4]):
            return out.graph, VertexConstraint(w, (e[1], e[2], e[6]), (e[1], e[2], e[7]))
        if pair == (e[5], e[6]):
            return out.graph, VertexConstraint(w, (e[1], e[2], e[7]), (e[1], e[3], e[7]))
        return out.graph, None
    if name == "8":
        ring = list(e[1:9])
        out = first_valid_split(h, w, [(ring[j], ring[(j + 1) % 8]) for j in range(8)], 5)
        h = out.graph
        i = out.plan.chosen + 1  # 1-based pair index
        if i % 2 == 0:
            def at(j):
                return ring[(i + j - 1) % 8]
            nxt = split_degree6(h, w, [at(3), at(4), at(5), at(6), at(7), at(2)])
            h = nxt.graph
            if nxt.plan.chosen_pair == (at(4), at(5)):
                h = split_degree4(h, w, [at(2), at(3), at(6), at(7)]).graph
        return h, None
    raise ValueError(name)
