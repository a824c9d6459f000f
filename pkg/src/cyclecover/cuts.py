"""Edge-cuts: bridges, cut sizes and odd edge-connectivity.

Odd cuts are found exactly. Loops are dropped, degree-2 vertices are smoothed
away and parallel edges are merged into capacities (none of which changes the
smallest odd cut), then every bipartition of each component is scored at once
with numpy. Components too large for that are searched by trying edge sets of
increasing odd size.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter
from .multigraph import Multigraph

ENUMERATION_LIMIT = 21  # vertices per reduced component


class _Unbounded:
    """No odd cut exists (every cut is even)."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Unbounded"

    def __reduce__(self):
        return (_Unbounded, ())


Unbounded = _Unbounded()


@dataclass(frozen=True)
class Cut:
    side_a: frozenset
    side_b: frozenset
    edge_ids: frozenset

    @property
    def size(self) -> int:
        return len(self.edge_ids)


def cut(g: Multigraph, side_a) -> Cut:
    a = frozenset(side_a)
    b = frozenset(v for v in g.vertices if v not in a)
    crossing = frozenset(e for e, (u, v) in g.edge_items() if (u in a) != (v in a))
    return Cut(a, b, crossing)


def e_between(g: Multigraph, xs, ys) -> int:
    """e(X, Y): number of edges with one end in X and the other in Y."""
    xs, ys = set(xs), set(ys)
    return sum(1 for _, (u, v) in g.edge_items()
               if (u in xs and v in ys) or (u in ys and v in xs))


def find_bridges(g: Multigraph) -> set[int]:
    """Edges whose removal disconnects their component (iterative lowpoint DFS)."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    bridges: set[int] = set()
    counter = 0
    for root in g.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        # frames: (vertex, edge used to enter, iterator over incident edges)
        stack = [(root, None, iter(g.incident(root)))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for e in it:
                if e == via:
                    continue
                w = g.other_end(e, v)
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, e, iter(g.incident(w))))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] > disc[p]:
                    bridges.add(via)
    return bridges


def is_bridgeless(g: Multigraph) -> bool:
    return not find_bridges(g)


# ------------------------------------------------------------ odd cuts
def _reduced_components(g: Multigraph):
    """Per component: (vertex count, list of (i, j, capacity)) after smoothing."""
    out = []
    for comp in g.components():
        cap: dict[tuple[int, int], int] = {}
        for v in comp:
            for e in g.incident(v):
                u, w = g.ends(e)
                if u == w or v != min(u, w):
                    continue
                key = (u, w) if u < w else (w, u)
                cap[key] = cap.get(key, 0) + 1
        adj: dict[int, dict[int, int]] = {v: {} for v in comp}
        for (u, w), c in cap.items():
            adj[u][w] = c
            adj[w][u] = c
        queue = [v for v in comp if sum(adj[v].values()) == 2]
        while queue:
            x = queue.pop()
            if x not in adj or sum(adj[x].values()) != 2:
                continue
            nbrs = list(adj[x].items())
            for y, _ in nbrs:
                del adj[y][x]
            del adj[x]
            if len(nbrs) == 2:
                (a, _), (b, _) = nbrs
                adj[a][b] = adj[a].get(b, 0) + 1
                adj[b][a] = adj[b].get(a, 0) + 1
                touched = (a, b)
            else:
                touched = (nbrs[0][0],)
            queue.extend(y for y in touched if sum(adj[y].values()) == 2)
        verts = sorted(adj)
        if len(verts) <= 1:
            continue
        index = {v: i for i, v in enumerate(verts)}
        edges = [(index[u], index[w], c) for u in verts for w, c in adj[u].items() if u < w]
        out.append((len(verts), edges))
    return out


def _min_odd_enumerate(n: int, edges) -> int | None:
    total = 1 << (n - 1)
    masks = np.arange(total, dtype=np.int64)
    best = None
    chunk = 1 << 18
    for start in range(0, total, chunk):
        mk = masks[start:start + chunk]
        bits = [np.zeros_like(mk)] + [(mk >> (i - 1)) & 1 for i in range(1, n)]
        size = np.zeros(mk.shape, dtype=np.int64)
        for i, j, c in edges:
            size += c * (bits[i] ^ bits[j])
        odd = size[(size & 1) == 1]
        if odd.size:
            val = int(odd.min())
            best = val if best is None else min(best, val)
    return best


def _is_cut(n: int, edge_list, chosen) -> bool:
    chosen = set(chosen)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, (i, j) in enumerate(edge_list):
        if k not in chosen:
            parent[find(i)] = find(j)
    colour: dict[int, int] = {}
    adj: dict[int, list[int]] = {}
    for k in chosen:
        a, b = (find(x) for x in edge_list[k])
        if a == b:
            return False
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    for s in adj:
        if s in colour:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in colour:
                    colour[y] = 1 - colour[x]
                    stack.append(y)
                elif colour[y] == colour[x]:
                    return False
    return True


def _min_odd_by_edge_sets(n: int, edges, limit: int | None) -> int | None:
    edge_list = [(i, j) for i, j, c in edges for _ in range(c)]
    deg = [0] * n
    for i, j in edge_list:
        deg[i] += 1
        deg[j] += 1
    odd_degrees = [d for d in deg if d % 2]
    if not odd_degrees:
        return None
    ceiling = min(odd_degrees)
    if limit is not None:
        ceiling = min(ceiling, limit)
    for s in range(1, ceiling, 2):
        for combo in itertools.combinations(range(len(edge_list)), s):
            if _is_cut(n, edge_list, combo):
                return s
    return min(odd_degrees)


def _min_odd(g: Multigraph, limit: int | None = None):
    best = None
    for n, edges in _reduced_components(g):
        if n <= ENUMERATION_LIMIT:
            val = _min_odd_enumerate(n, edges)
        else:
            val = _min_odd_by_edge_sets(n, edges, limit if best is None else min(best, limit or best))
        if val is not None and (best is None or val < best):
            best = val
    return Unbounded if best is None else best


def min_odd_cut_size(g: Multigraph):
    """Smallest odd cut size over all bipartitions, or ``Unbounded``."""
    return _min_odd(g)


def is_k_odd_connected(g: Multigraph, k: int) -> bool:
    if k % 2 == 0:
        raise InvalidParameter(f"k must be odd, got {k}")
    if k <= 1:
        return True
    if k == 3:
        return is_bridgeless(g)
    val = _min_odd(g, limit=k)
    return val is Unbounded or val >= k


def all_cut_sizes(g: Multigraph) -> set[int]:
    """Brute-force set of sizes of all edge-cuts with both sides non-empty.

    Exponential; for cross-checks on graphs with at most ~14 vertices.
    """
    vs = g.vertices
    sizes = set()
    if len(vs) < 2:
        return sizes
    first, rest = vs[0], vs[1:]
    for r in range(0, len(rest)):
        for extra in itertools.combinations(rest, r):
            sizes.add(cut(g, (first, *extra)).size)
    return sizes


def brute_min_odd_cut_size(g: Multigraph):
    odd = [s for s in all_cut_sizes(g) if s % 2]
    return min(odd) if odd else Unbounded
