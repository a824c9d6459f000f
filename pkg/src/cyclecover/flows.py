"""Nowhere-zero Z2^2-flows and the constrained repair by red/blue trail swaps.

Flow values are the ints 1 (01, red), 2 (10, green) and 3 (11, blue); the
group operation is XOR. A vertex is conserving when the XOR of the values at
its edge-ends is 0, so loops cancel.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InvalidConstraint, NoFlow, RoutingDeadEnd
from .multigraph import Multigraph

RED, GREEN, BLUE = 1, 2, 3
COLORS = (RED, GREEN, BLUE)
COLOR_NAMES = {RED: "red", GREEN: "green", BLUE: "blue"}

STATS: Counter = Counter()


@dataclass
class FlowAssignment:
    values: dict[int, int]

    def __getitem__(self, e: int) -> int:
        return self.values[e]

    def violations(self, g: Multigraph) -> list[int]:
        """Vertices where the flow does not conserve, plus -1 if some value is 0 or missing."""
        bad = [v for v in g.vertices if _vertex_sum(g, self.values, v) != 0]
        if any(self.values.get(e, 0) not in COLORS for e in g.edge_ids):
            bad.append(-1)
        return bad

    def is_valid(self, g: Multigraph) -> bool:
        return not self.violations(g)


def _vertex_sum(g: Multigraph, values: Mapping[int, int], v: int) -> int:
    s = 0
    for e in g.incident(v):
        s ^= values.get(e, 0)
    return s


# ------------------------------------------------------------ flow search
def find_nowhere_zero_flow(g: Multigraph) -> FlowAssignment:
    """Backtracking search with forced-edge propagation; deterministic."""
    values: dict[int, int] = {}
    for e in g.edge_ids:
        if g.is_loop(e):
            values[e] = RED
    free = [e for e in g.edge_ids if e not in values]
    # open ends per vertex (loops excluded, they are already fixed)
    open_at: dict[int, set[int]] = {v: set() for v in g.vertices}
    for e in free:
        u, w = g.ends(e)
        open_at[u].add(e)
        open_at[w].add(e)
    acc: dict[int, int] = {v: 0 for v in g.vertices}

    def assign(e, val, log):
        values[e] = val
        log.append(e)
        for x in set(g.ends(e)):
            acc[x] ^= val
            open_at[x].discard(e)

    def undo(log):
        for e in reversed(log):
            val = values.pop(e)
            for x in set(g.ends(e)):
                acc[x] ^= val
                open_at[x].add(e)
        log.clear()

    def propagate(touched, log) -> bool:
        stack = list(touched)
        while stack:
            x = stack.pop()
            rest = open_at[x]
            if not rest:
                if acc[x]:
                    return False
                continue
            if len(rest) == 1:
                (e,) = rest
                need = acc[x]
                if need == 0:
                    return False
                assign(e, need, log)
                stack.extend(g.ends(e))
        return True

    order = sorted(free, key=lambda e: (min(g.ends(e)), e))

    def solve(i) -> bool:
        while i < len(order) and order[i] in values:
            i += 1
        if i == len(order):
            return all(acc[v] == 0 for v in g.vertices)
        e = order[i]
        for val in COLORS:
            log: list[int] = []
            assign(e, val, log)
            if propagate(g.ends(e), log) and solve(i + 1):
                return True
            undo(log)
        return False

    pre: list[int] = []
    if not propagate(g.vertices, pre) or not solve(0):
        raise NoFlow("graph has no nowhere-zero Z2^2-flow")
    STATS["flows"] += 1
    return FlowAssignment(dict(values))


# ------------------------------------------------------------ constraints
@dataclass
class VertexConstraint:
    v: int
    A: tuple[int, ...]
    B: tuple[int, ...]
    C: tuple[int, ...] | None = None

    @property
    def kind(self) -> int:
        return 5 if self.C is None else 6

    def check(self, g: Multigraph) -> None:
        if not g.has_vertex(self.v):
            raise InvalidConstraint(f"unknown vertex {self.v}")
        inc = Counter(g.incident(self.v))
        a, b = Counter(self.A), Counter(self.B)
        if self.C is None:
            if g.degree(self.v) != 5:
                raise InvalidConstraint(f"vertex {self.v} must have degree 5")
            if len(self.A) != 3 or len(self.B) != 3 or sum((a & b).values()) != 2:
                raise InvalidConstraint("degree-5 sets need three ends each, two shared")
            if (a | b) - inc:
                raise InvalidConstraint("constraint names edges not incident with the vertex")
        else:
            if g.degree(self.v) != 6:
                raise InvalidConstraint(f"vertex {self.v} must have degree 6")
            if any(len(s) != 2 for s in (self.A, self.B, self.C)) or a + b + Counter(self.C) != inc:
                raise InvalidConstraint("degree-6 sets must partition the six ends into pairs")


def _ends_at(g: Multigraph, v: int) -> list[tuple[int, int]]:
    out = []
    for e in sorted(set(g.incident(v))):
        u, w = g.ends(e)
        if u == w:
            out += [(e, 0), (e, 1)]
        else:
            out.append((e, 0 if u == v else 1))
    return out


def _assign_ends(g: Multigraph, v: int, groups: list[list[int]]) -> list[list[tuple[int, int]]]:
    """Turn multisets of edge ids into disjoint lists of edge-ends at v."""
    avail: dict[int, list[tuple[int, int]]] = {}
    for end in _ends_at(g, v):
        avail.setdefault(end[0], []).append(end)
    return [[avail[e].pop(0) for e in grp] for grp in groups]


def _roles(g: Multigraph, c: VertexConstraint):
    if c.kind == 5:
        a, b = Counter(c.A), Counter(c.B)
        rest = Counter(g.incident(c.v)) - (a | b)
        groups = [sorted((a - b).elements()), sorted((a & b).elements()),
                  sorted((b - a).elements()), sorted(rest.elements())]
        f1, f23, f4, f5 = _assign_ends(g, c.v, groups)
        return [f1[0], f23[0], f23[1], f4[0], f5[0]]
    return _assign_ends(g, c.v, [sorted(c.A), sorted(c.B), sorted(c.C)])


def _is_good(colors, kind) -> bool:
    if kind == 5:
        f = colors
        return len({f[0], f[1], f[2]}) >= 2 and len({f[1], f[2], f[3]}) >= 2
    a, b, c = colors
    return (len(set(a + b + c)) == 3 or len(set(a)) == 1 or len(set(b)) == 1
            or len(set(c)) == 2)


# ------------------------------------------------------------ routing data
# Good degree-5 vertex with three trail edges of one colour: keyed by the
# positions (1..5) of the majority colour and of the single minority trail
# edge, value is the pairing of the four trail positions.
DEG5_ROUTES = {
    ((1, 2, 4), 3): ((1, 4), (2, 3)),
    ((1, 2, 4), 5): ((1, 2), (4, 5)),
    ((1, 2, 5), 3): ((1, 5), (2, 3)),
    ((1, 2, 5), 4): ((1, 2), (4, 5)),
    ((1, 4, 5), 2): ((1, 2), (4, 5)),
    ((2, 3, 5), 1): ((1, 2), (3, 5)),
}

# position relabelings that preserve A = {1,2,3}, B = {2,3,4} up to swapping A and B
_DEG5_SYMMETRIES = [
    {1: 1, 2: 2, 3: 3, 4: 4, 5: 5},
    {1: 1, 2: 3, 3: 2, 4: 4, 5: 5},
    {1: 4, 2: 2, 3: 3, 4: 1, 5: 5},
    {1: 4, 2: 3, 3: 2, 4: 1, 5: 5},
]


def deg5_route(majority: Iterable[int], minority: int) -> dict[int, int]:
    """Exit position for every arrival position at a good degree-5 vertex."""
    maj = set(majority)
    for s in _DEG5_SYMMETRIES:
        key = (tuple(sorted(s[p] for p in maj)), s[minority])
        if key in DEG5_ROUTES:
            inv = {b: a for a, b in s.items()}
            out = {}
            for x, y in DEG5_ROUTES[key]:
                out[inv[x]] = inv[y]
                out[inv[y]] = inv[x]
            return out
    raise RoutingDeadEnd(f"no route for majority {sorted(maj)} minority {minority}")


def routing_table_selftest() -> int:
    """Check every good degree-5 configuration with four trail edges has a route.

    Also checks that swapping the two trail colours on any union of routed
    pairs leaves the vertex good. Returns the number of configurations checked.
    """
    checked = 0
    for maj in itertools.combinations(range(1, 6), 3):
        if set(maj) in ({1, 2, 3}, {2, 3, 4}):
            continue  # bad vertex
        for minority in (p for p in range(1, 6) if p not in maj):
            route = deg5_route(maj, minority)
            trail = set(maj) | {minority}
            assert set(route) == trail and all(route[route[p]] == p for p in trail)
            colors = {p: RED for p in maj}
            colors[minority] = BLUE
            colors[next(p for p in range(1, 6) if p not in trail)] = GREEN
            pairs = {frozenset((p, route[p])) for p in trail}
            for k in range(1, len(pairs) + 1):
                for chosen in itertools.combinations(pairs, k):
                    swapped = dict(colors)
                    for p in set().union(*chosen):
                        swapped[p] = {RED: BLUE, BLUE: RED}[swapped[p]]
                    assert _is_good([swapped[p] for p in range(1, 6)], 5), (maj, minority, chosen)
            checked += 1
    return checked


# ------------------------------------------------------------ repair
class _State:
    def __init__(self, g: Multigraph, values: dict[int, int], constraints: list[VertexConstraint]):
        self.g = g
        self.values = values
        self.cons = {c.v: c for c in constraints}
        self.roles = {c.v: _roles(g, c) for c in constraints}

    def colors(self, v):
        r = self.roles[v]
        if self.cons[v].kind == 5:
            return [self.values[e] for e, _ in r]
        return [[self.values[e] for e, _ in grp] for grp in r]

    def good(self, v) -> bool:
        return _is_good(self.colors(v), self.cons[v].kind)

    def bad_vertices(self) -> list[int]:
        return sorted(v for v in self.cons if not self.good(v))


def _flip(values, edges, x, y):
    for e in edges:
        values[e] = y if values[e] == x else x


def _exits(st: _State, w: int, arrive, used: set[int], trail: tuple[int, int]) -> list:
    """Admissible next edge-ends at w, best first."""
    g, val = st.g, st.values
    ends = _ends_at(g, w)
    tr = [x for x in ends if val[x[0]] in trail]
    free = [x for x in tr if x[0] not in used]
    if w not in st.cons or not st.good(w):
        return free
    kind = st.cons[w].kind
    roles = st.roles[w]
    if kind == 5:
        if len(tr) == 2:
            return free
        pos = {end: i + 1 for i, end in enumerate(roles)}
        cnt = Counter(val[e] for e, _ in tr)
        major = max(cnt, key=cnt.get)
        maj = [pos[x] for x in tr if val[x[0]] == major]
        minority = next(pos[x] for x in tr if val[x[0]] != major)
        out = roles[deg5_route(maj, minority)[pos[arrive]] - 1]
        return [out] if out[0] not in used else []
    a, b, c = roles
    col = [[val[e] for e, _ in grp] for grp in roles]
    for grp, cols in ((a, col[0]), (b, col[1])):
        if len(set(cols)) == 1:
            if arrive in grp:
                other = grp[1 - grp.index(arrive)]
                return [other] if other[0] not in used and val[other[0]] in trail else []
            return [x for x in free if x not in grp]
    if len(set(col[2])) == 2:
        if arrive in c:
            other = c[1 - c.index(arrive)]
            if val[other[0]] in trail:
                return [other] if other[0] not in used else []
            return free
        outside = [x for x in free if x not in c]
        return outside or [x for x in free if x in c]
    x_col = val[arrive[0]]
    return [x for x in free if val[x[0]] != x_col]


def build_swap_trail(g: Multigraph, flow: FlowAssignment, v: int,
                     constraints: Iterable[VertexConstraint], limit: int = 20000) -> list[int]:
    """Closed trail at bad vertex v whose red/blue swap lowers the bad count.

    The two trail colours play the roles of red and blue. Free choices are
    taken lowest edge id first, with backtracking if a choice dead-ends or
    the resulting swap would not improve the flow.
    """
    constraints = list(constraints)
    st = _State(g, dict(flow.values), constraints)
    if v not in st.cons or st.good(v):
        raise InvalidConstraint(f"vertex {v} is not a bad constrained vertex")
    before = set(st.bad_vertices())
    roles = st.roles[v]
    if st.cons[v].kind == 5:
        cols = st.colors(v)
        mono_a = len(set(cols[0:3])) == 1
        x = cols[0] if mono_a else cols[3]
        y = cols[4]
        starts = [roles[0] if mono_a else roles[3]]
    else:
        cols = st.colors(v)
        x = cols[2][0]
        present = {c for grp in cols for c in grp}
        y = next(c for c in COLORS if c not in present)
        starts = [end for end in _ends_at(g, v) if st.values[end[0]] == x]
    trail_cols = (x, y)
    budget = [limit]

    def accept(edges) -> bool:
        vals = dict(st.values)
        _flip(vals, edges, x, y)
        after = _State(g, vals, constraints)
        now = set(after.bad_vertices())
        return v not in now and now < before

    def walk(end, path, used):
        budget[0] -= 1
        if budget[0] < 0:
            return None
        e, s = end
        w = g.ends(e)[1 - s]
        arrive = (e, 1 - s)
        if w == v:
            return list(path) if accept(path) else None
        for nxt in _exits(st, w, arrive, used, trail_cols):
            used.add(nxt[0])
            path.append(nxt[0])
            res = walk(nxt, path, used)
            if res is not None:
                return res
            path.pop()
            used.discard(nxt[0])
        return None

    for start in starts:
        res = walk(start, [start[0]], {start[0]})
        if res is not None:
            return res
    raise RoutingDeadEnd(f"no improving trail from bad vertex {v}")


def bad_vertex_count(g: Multigraph, flow: FlowAssignment, constraints: Iterable[VertexConstraint]) -> int:
    return len(_State(g, flow.values, list(constraints)).bad_vertices())


def repair_flow(g: Multigraph, flow: FlowAssignment, constraints: Iterable[VertexConstraint],
                history: list[int] | None = None) -> FlowAssignment:
    """Swap along trails until every constrained vertex is good.

    ``history``, if given, receives the bad-vertex count before each swap and
    once more at the end.
    """
    constraints = list(constraints)
    seen = set()
    for c in constraints:
        c.check(g)
        if c.v in seen:
            raise InvalidConstraint(f"two constraints at vertex {c.v}")
        seen.add(c.v)
    if not flow.is_valid(g):
        raise InvalidConstraint("input flow is not a nowhere-zero flow")
    values = dict(flow.values)
    st = _State(g, values, constraints)
    bad = st.bad_vertices()
    while bad:
        if history is not None:
            history.append(len(bad))
        v = bad[0]
        trail = build_swap_trail(g, FlowAssignment(values), v, constraints)
        cols = st.colors(v)
        if st.cons[v].kind == 5:
            x = cols[0] if len(set(cols[0:3])) == 1 else cols[3]
            y = cols[4]
        else:
            x = cols[2][0]
            y = next(c for c in COLORS if c not in {c2 for grp in cols for c2 in grp})
        good_before = {u for u in st.cons if u not in bad}
        _flip(values, trail, x, y)
        new_bad = st.bad_vertices()
        assert len(new_bad) < len(bad) and not (good_before & set(new_bad)), "swap did not improve"
        STATS["swaps"] += 1
        bad = new_bad
    if history is not None:
        history.append(0)
    out = FlowAssignment(values)
    assert out.is_valid(g)
    return out
