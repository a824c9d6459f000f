"""Ground truth for small graphs: shortest covers by at most three cycles.

A cycle here is any even subgraph, so the candidates are exactly the
elements of the cycle space. Edges lying in the same fundamental cycles
always travel together, so they are merged into classes first and each
element becomes a 64-bit mask over classes.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cover.core import CycleCover
from .cuts import find_bridges
from .errors import Infeasible, InvalidParameter, TooLarge
from .multigraph import Multigraph

BRUTE_LIMIT = 14  # cycle-space dimension
BRUTE_PREFERRED = 9  # above this the integer program is much faster
CHUNK = 512
BIG = np.iinfo(np.int64).max // 4


@dataclass
class CycleSpaceBasis:
    basis: list[frozenset]
    dimension: int
    forest: frozenset = frozenset()


def cycle_space_basis(g: Multigraph) -> CycleSpaceBasis:
    """Fundamental cycles of the spanning forest grown from the lowest edge ids."""
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    forest, chords = [], []
    for e in sorted(g.edge_ids):
        u, v = g.ends(e)
        ru, rv = find(u), find(v)
        if ru == rv:
            chords.append(e)
        else:
            parent[ru] = rv
            forest.append(e)
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in forest:
        u, v = g.ends(e)
        adj.setdefault(u, []).append((e, v))
        adj.setdefault(v, []).append((e, u))
    depth, up = {}, {}
    for root in sorted(g.vertices):
        if root in depth:
            continue
        depth[root], up[root] = 0, None
        stack = [root]
        while stack:
            x = stack.pop()
            for e, y in adj.get(x, []):
                if y not in depth:
                    depth[y], up[y] = depth[x] + 1, (e, x)
                    stack.append(y)
    basis = []
    for c in chords:
        u, v = g.ends(c)
        path = {c}
        while u != v:
            if depth[u] < depth[v]:
                u, v = v, u
            e, u = up[u]
            path ^= {e}
        basis.append(frozenset(path))
    dim = g.m - g.n + len(g.components())
    assert dim == len(basis)
    return CycleSpaceBasis(basis, dim, frozenset(forest))


def cycle_space_dimension(g: Multigraph) -> int:
    return g.m - g.n + len(g.components())


# ------------------------------------------------------------ brute force
@dataclass
class _Space:
    classes: list[list[int]]
    weights: np.ndarray  # per class
    masks: np.ndarray  # uint64, sorted by (length, encoding)
    lengths: np.ndarray
    full: np.uint64
    tables: list[np.ndarray] = field(default_factory=list)

    def weigh(self, masks: np.ndarray) -> np.ndarray:
        out = np.zeros(masks.shape, dtype=np.int64)
        for j, t in enumerate(self.tables):
            out += t[((masks >> np.uint64(8 * j)) & np.uint64(255)).astype(np.int64)]
        return out

    def edges(self, mask) -> tuple[int, ...]:
        mask = int(mask)
        return tuple(sorted(e for i, cl in enumerate(self.classes) if mask >> i & 1 for e in cl))


def _space(g: Multigraph) -> _Space:
    basis = cycle_space_basis(g).basis
    signature: dict[int, list[int]] = {}
    for e in g.edge_ids:
        sig = sum(1 << i for i, b in enumerate(basis) if e in b)
        signature.setdefault(sig, []).append(e)
    if 0 in signature:
        raise Infeasible(f"edges {sorted(signature[0])} lie in no cycle")
    sigs = sorted(signature, key=lambda s: min(signature[s]))
    if len(sigs) > 64:
        raise TooLarge(f"{len(sigs)} edge classes exceed the 64-bit encoding")
    classes = [sorted(signature[s]) for s in sigs]
    w = np.array([sum(g.weight(e) for e in cl) for cl in classes], dtype=np.int64)
    gens = [np.uint64(sum(1 << j for j, s in enumerate(sigs) if s >> i & 1)) for i in range(len(basis))]
    masks = np.zeros(1, dtype=np.uint64)
    for b in gens:
        masks = np.concatenate([masks, masks ^ b])
    tables = []
    for j in range((len(sigs) + 7) // 8):
        t = np.zeros(256, dtype=np.int64)
        for byte in range(256):
            t[byte] = sum(int(w[8 * j + i]) for i in range(8) if byte >> i & 1 and 8 * j + i < len(sigs))
        tables.append(t)
    sp = _Space(classes, w, masks, np.zeros(0), np.uint64((1 << len(sigs)) - 1), tables)
    lengths = sp.weigh(masks)
    order = np.lexsort((masks, lengths))
    sp.masks, sp.lengths = masks[order], lengths[order]
    return sp


def _key(sp: _Space, masks) -> tuple:
    return tuple(sorted(sp.edges(x) for x in masks if int(x)))


def shortest_cover_bruteforce(g: Multigraph, max_cycles: int = 3, upper: int | None = None) -> CycleCover:
    """Minimum-length cover by at most ``max_cycles`` cycles, exhaustively.

    Pairs (a, b) with a no longer than b are scanned, pruned by the lower bound
    len(a) + len(b) + weight of what they miss, and completed by the cheapest
    element containing the rest. Ties go to the lexicographically smallest
    list of sorted edge-id tuples.

    ``upper``, the length of some known cover, only speeds up pruning: every
    candidate no longer than it is still examined.
    """
    if not 1 <= max_cycles <= 3:
        raise InvalidParameter("max_cycles must be 1, 2 or 3")
    bridges = find_bridges(g)
    if bridges:
        raise Infeasible(f"bridges {sorted(bridges)} lie in no cycle")
    if g.m == 0:
        return CycleCover([], 0)
    dim = cycle_space_dimension(g)
    if dim > BRUTE_LIMIT:
        raise TooLarge(f"cycle space dimension {dim} exceeds {BRUTE_LIMIT}")
    sp = _space(g)
    E, L, full = sp.masks, sp.lengths, sp.full
    n = len(E)
    zero = int(np.nonzero(E == 0)[0][0])
    best: tuple | None = None  # (cost, key, masks)
    ceiling = upper

    def offer(cost, trio):
        nonlocal best
        key = _key(sp, trio)
        if best is None or (cost, key) < best[:2]:
            best = (cost, key, trio)

    a_range = range(n) if max_cycles == 3 else [zero]
    for ia in a_range:
        a = E[ia]
        ub = best[0] if best else ceiling
        if ub is not None and 3 * L[ia] > ub:
            break
        if max_cycles == 1:
            if E[-1] == full or full in E:
                j = int(np.nonzero(E == full)[0][0])
                offer(int(L[j]), (full,))
            break
        start = ia if max_cycles == 3 else 0
        bs = np.arange(start, n)
        for lo in range(0, len(bs), CHUNK):
            ib = bs[lo:lo + CHUNK]
            ub = best[0] if best else ceiling
            need = full & ~(a | E[ib])
            lb = L[ia] + L[ib] + sp.weigh(need)
            keep = np.ones(len(ib), dtype=bool) if ub is None else (lb <= ub) & (L[ia] + 2 * L[ib] <= ub)
            ib, need = ib[keep], need[keep]
            if not len(ib):
                continue
            sup = (E[None, :] & need[:, None]) == need[:, None]
            sup &= np.arange(n)[None, :] >= ib[:, None]
            cost_c = np.where(sup, L[None, :], BIG)
            cbest = cost_c.min(axis=1)
            totals = np.where(cbest < BIG, L[ia] + L[ib] + cbest, BIG)
            tmin = int(totals.min())
            if tmin >= BIG or (ub is not None and tmin > ub):
                continue
            for j in np.nonzero(totals == tmin)[0]:
                for ic in np.nonzero(cost_c[j] == cbest[j])[0]:
                    offer(tmin, (a, E[ib[j]], E[ic]))
    if best is None:
        raise Infeasible(f"no cover by {max_cycles} cycles")
    cycles = [frozenset(c) for c in best[1]]
    return CycleCover(cycles, sum(g.total_weight(c) for c in cycles))


# ------------------------------------------------------------ integer program
def shortest_cover_milp(g: Multigraph, max_cycles: int = 3, time_limit: float = 60.0) -> CycleCover:
    """Same optimum via an integer program (HiGHS); for dimensions beyond brute force."""
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import lil_matrix

    bridges = find_bridges(g)
    if bridges:
        raise Infeasible(f"bridges {sorted(bridges)} lie in no cycle")
    if g.m == 0:
        return CycleCover([], 0)
    es, vs = list(g.edge_ids), list(g.vertices)
    k, m, n = max_cycles, len(es), len(vs)
    ei = {e: i for i, e in enumerate(es)}
    vi = {v: i for i, v in enumerate(vs)}
    nx = k * m
    nvar = nx + k * n
    rows = k * n + m
    A = lil_matrix((rows, nvar))
    for c in range(k):
        for e in es:
            u, v = g.ends(e)
            if u != v:
                A[c * n + vi[u], c * m + ei[e]] += 1
                A[c * n + vi[v], c * m + ei[e]] += 1
        for v in vs:
            A[c * n + vi[v], nx + c * n + vi[v]] = -2
    for e in es:
        for c in range(k):
            A[k * n + ei[e], c * m + ei[e]] = 1
    lb = np.concatenate([np.zeros(k * n), np.ones(m)])
    ub = np.concatenate([np.zeros(k * n), np.full(m, np.inf)])
    cost = np.concatenate([np.tile([g.weight(e) for e in es], k), np.zeros(k * n)])
    upper = np.concatenate([np.ones(nx), np.full(k * n, np.inf)])
    res = milp(cost, constraints=LinearConstraint(A.tocsr(), lb, ub), integrality=np.ones(nvar),
               bounds=Bounds(np.zeros(nvar), upper), options={"time_limit": time_limit})
    if res.status != 0 or res.x is None:
        raise Infeasible(f"integer program ended with status {res.status}: {res.message}")
    x = np.round(res.x[:nx]).astype(int)
    cycles = [frozenset(e for e in es if x[c * m + ei[e]]) for c in range(k)]
    cycles = sorted((c for c in cycles if c), key=lambda c: sorted(c))
    return CycleCover(cycles, sum(g.total_weight(c) for c in cycles))


def shortest_cover(g: Multigraph, max_cycles: int = 3) -> CycleCover:
    """Brute force when the cycle space is small, the integer program otherwise."""
    if cycle_space_dimension(g) <= BRUTE_PREFERRED:
        return shortest_cover_bruteforce(g, max_cycles)
    return shortest_cover_milp(g, max_cycles)


# ------------------------------------------------------------ validation
@dataclass
class CoverCheck:
    ok: bool
    length: int
    problems: list[dict]

    def __bool__(self):
        return self.ok


def verify_cover(g: Multigraph, cover, max_cycles: int = 3) -> CoverCheck:
    """Check evenness, coverage and cycle count; recompute the length."""
    cycles = [set(c) for c in (cover.cycles if hasattr(cover, "cycles") else cover)]
    problems: list[dict] = []
    if len(cycles) > max_cycles:
        problems.append({"kind": "too_many_cycles", "count": len(cycles)})
    length = 0
    for i, c in enumerate(cycles):
        for e in sorted(c):
            if not g.has_edge(e):
                problems.append({"kind": "unknown_edge", "cycle": i, "edge": e})
        c &= set(g.edge_ids)
        length += g.total_weight(c)
        deg: dict[int, int] = {}
        for e in c:
            u, v = g.ends(e)
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        for v in sorted(x for x, d in deg.items() if d % 2):
            problems.append({"kind": "odd_degree", "cycle": i, "vertex": v})
    covered = set().union(*cycles) if cycles else set()
    for e in g.edge_ids:
        if e not in covered:
            problems.append({"kind": "uncovered", "edge": e})
    stored = getattr(cover, "total_length", None)
    if stored is not None and stored != length:
        problems.append({"kind": "length_mismatch", "stored": stored, "actual": length})
    return CoverCheck(not problems, length, problems)
