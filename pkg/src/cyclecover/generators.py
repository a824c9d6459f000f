"""Seeded graph generators and the named small graphs.

All random generators take an integer seed and are reproducible: they draw
only from their own ``random.Random`` instance.
"""
from __future__ import annotations

import random
from typing import Callable

from .cuts import is_bridgeless
from .errors import InvalidParameter
from .multigraph import Multigraph

MAX_ATTEMPTS = 10_000


# ------------------------------------------------------------ named graphs
def k4() -> Multigraph:
    return Multigraph.from_pairs([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def k33() -> Multigraph:
    return Multigraph.from_pairs([(a, b) for a in range(3) for b in range(3, 6)])


def petersen() -> Multigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Multigraph.from_pairs(outer + spokes + inner)


def prism() -> Multigraph:
    return Multigraph.from_pairs([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])


def cube() -> Multigraph:
    pairs = [(a, a ^ (1 << i)) for a in range(8) for i in range(3) if a < a ^ (1 << i)]
    return Multigraph.from_pairs(pairs)


def theta(k: int = 3) -> Multigraph:
    return Multigraph.from_pairs([(0, 1)] * k)


def k5() -> Multigraph:
    return Multigraph.from_pairs([(a, b) for a in range(5) for b in range(a + 1, 5)])


def circuit(n: int) -> Multigraph:
    return Multigraph.from_pairs([(i, (i + 1) % n) for i in range(n)])


def host17() -> Multigraph:
    """A degree-3 vertex tripled onto a degree-5 one, which meets a doubled pair."""
    return Multigraph.from_pairs([(0, 1)] * 3 + [(1, 2), (1, 3)] + [(2, 3)] * 2)


NAMED: dict[str, Callable[[], Multigraph]] = {
    "K4": k4,
    "K33": k33,
    "petersen": petersen,
    "prism": prism,
    "cube": cube,
    "theta": theta,
    "K5": k5,
    "host17": host17,
}

NAMED_CUBIC = ("K4", "K33", "petersen", "prism", "cube")


# ------------------------------------------------------------ random graphs
def gen_cubic_bridgeless(n: int, seed: int, simple: bool = True) -> Multigraph:
    """A Hamilton cycle on a shuffled vertex order plus a random perfect matching.

    The Hamilton cycle makes every result connected and bridgeless. With
    ``simple`` the matching is redrawn until no edge is doubled; for n = 4
    that leaves only K4.
    """
    if n % 2 or n < 4:
        raise InvalidParameter(f"n must be even and at least 4, got {n}")
    rng = random.Random(seed)
    for _ in range(MAX_ATTEMPTS):
        order = list(range(n))
        rng.shuffle(order)
        ring = [(order[i], order[(i + 1) % n]) for i in range(n)]
        rest = list(range(n))
        rng.shuffle(rest)
        matching = [(rest[2 * i], rest[2 * i + 1]) for i in range(n // 2)]
        pairs = ring + matching
        if simple and len({frozenset(p) for p in pairs}) < len(pairs):
            continue
        g = Multigraph.from_pairs(pairs)
        assert g.is_cubic() and is_bridgeless(g)
        return g
    raise InvalidParameter(f"could not draw a simple cubic graph on {n} vertices")


def gen_cubic_pairing(n: int, seed: int) -> Multigraph:
    """Configuration model: random pairing of 3n half-edges, loops and bridges rejected."""
    if n % 2 or n < 2:
        raise InvalidParameter(f"n must be even and positive, got {n}")
    rng = random.Random(seed)
    for _ in range(MAX_ATTEMPTS):
        pts = [v for v in range(n) for _ in range(3)]
        rng.shuffle(pts)
        pairs = [(pts[2 * i], pts[2 * i + 1]) for i in range(len(pts) // 2)]
        if any(a == b for a, b in pairs):
            continue
        g = Multigraph.from_pairs(pairs)
        if len(g.components()) == 1 and is_bridgeless(g):
            return g
    raise InvalidParameter("pairing model kept producing loops or bridges")


def _ring_plus(n: int, extra: int, rng: random.Random, max_degree: int | None, loops: bool):
    order = list(range(n))
    rng.shuffle(order)
    pairs = [(order[i], order[(i + 1) % n]) for i in range(n)] if n > 1 else []
    deg = [2 if n > 1 else 0] * n
    if n == 1:
        pairs.append((0, 0))
        deg[0] = 2

    def room(v):
        return max_degree is None or deg[v] < max_degree

    # lift every vertex to degree 3
    while True:
        low = [v for v in range(n) if deg[v] < 3]
        if not low:
            break
        u = low[0]
        cands = [w for w in range(n) if w != u and room(w)] or [u]
        w = rng.choice(cands)
        if w == u:
            pairs.append((u, u))
            deg[u] += 2
        else:
            pairs.append((u, w))
            deg[u] += 1
            deg[w] += 1
    for _ in range(extra):
        u = rng.randrange(n)
        w = rng.randrange(n)
        if u == w and not loops and n > 1:
            w = (u + 1 + rng.randrange(n - 1)) % n
        if u == w:
            if max_degree is not None and deg[u] + 2 > max_degree:
                continue
            deg[u] += 2
        else:
            if not (room(u) and room(w)):
                continue
            deg[u] += 1
            deg[w] += 1
        pairs.append((u, w))
    return pairs


def gen_mindeg3(n: int, m: int, seed: int, loops: bool = False) -> Multigraph:
    """Connected bridgeless multigraph, minimum degree 3, about ``m`` edges.

    A Hamilton cycle is topped up to minimum degree three and then random
    (possibly parallel) edges are added until ``m`` is reached.
    """
    if n < 1:
        raise InvalidParameter("n must be positive")
    rng = random.Random(seed)
    base = _ring_plus(n, 0, rng, None, loops)
    pairs = base + _extra(n, m - len(base), rng, loops)
    g = Multigraph.from_pairs(pairs, vertices=range(n))
    assert g.min_degree() >= 3 and is_bridgeless(g)
    return g


def _extra(n, count, rng, loops):
    out = []
    for _ in range(max(0, count)):
        u = rng.randrange(n)
        w = rng.randrange(n)
        if u == w and (not loops or rng.random() < 0.7) and n > 1:
            w = (u + 1 + rng.randrange(n - 1)) % n
        out.append((u, w))
    return out


def gen_bridgeless(n: int, extra: int, seed: int, max_degree: int = 8, loops: bool = False) -> Multigraph:
    """Bridgeless graph of arbitrary degrees (2 allowed) up to ``max_degree``."""
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    pairs = [(order[i], order[(i + 1) % n]) for i in range(n)] if n > 1 else [(0, 0)]
    deg = [2] * n
    for _ in range(extra):
        u, w = rng.randrange(n), rng.randrange(n)
        if u == w and not loops:
            continue
        add = 2 if u == w else 1
        if deg[u] + add > max_degree or deg[w] + add > max_degree:
            continue
        deg[u] += 1
        deg[w] += 1
        pairs.append((u, w))
    g = Multigraph.from_pairs(pairs, vertices=range(n))
    assert is_bridgeless(g)
    return g


# ------------------------------------------------------------ planted bundles
PLANTS = ("leaf", "leaf-special", "inner", "suppress")


def plant(g: Multigraph, kind: str, k: int, rng: random.Random) -> Multigraph:
    """Add a parallel bundle that the named reduction applies to."""
    pairs = [g.ends(e) for e in g.edge_ids]
    n = g._next_vertex
    vs = list(g.vertices)
    if kind == "leaf":
        v2 = rng.choice(vs)
        pairs += [(n, v2)] * max(k, 3)
    elif kind == "leaf-special":
        i = rng.randrange(len(pairs))
        a, b = pairs.pop(i)
        pairs += [(a, n), (n, b)] + [(n + 1, n)] * max(k, 4)
    elif kind == "inner":
        u, w = rng.sample(vs, 2) if len(vs) > 1 else (vs[0], vs[0])
        pairs += [(u, w)] * max(k, 2)
    elif kind == "suppress":
        i = rng.randrange(len(pairs))
        a, b = pairs.pop(i)
        pairs += [(a, n), (n + 1, b)] + [(n, n + 1)] * max(k, 3)
    else:
        raise InvalidParameter(f"unknown plant {kind!r}")
    return Multigraph.from_pairs(pairs, vertices=vs)


def gen_planted(n: int, m: int, seed: int, kinds=PLANTS, loops: bool = False) -> Multigraph:
    """A min-degree-3 graph with one planted bundle per entry of ``kinds``."""
    rng = random.Random(seed)
    g = gen_mindeg3(n, m, rng.randrange(1 << 30), loops)
    for kind in kinds:
        g = plant(g, kind, rng.choice((2, 3, 4, 5)), rng)
    assert g.min_degree() >= 3 and is_bridgeless(g)
    return g
