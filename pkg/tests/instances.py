"""Seeded instance builders shared by the unit and acceptance tests."""
import random

from cyclecover.cuts import is_bridgeless, is_k_odd_connected
from cyclecover.errors import InvalidConstraint, NoFlow
from cyclecover.flows import FlowAssignment, VertexConstraint, find_nowhere_zero_flow
from cyclecover.generators import gen_bridgeless, gen_cubic_bridgeless, gen_cubic_pairing, gen_mindeg3, gen_planted
from cyclecover.multigraph import Multigraph

PERMS = [(1, 2, 3), (2, 3, 1), (3, 1, 2), (1, 3, 2), (2, 1, 3), (3, 2, 1)]


def constraint_instance(rng: random.Random, odd_connectivity: int = 5):
    """A host with a flow and degree-5/6 constraints, or None if the draw is unusable."""
    n = rng.randint(3, 9)
    degs = [rng.choice([4, 5, 5, 6, 6]) for _ in range(n)]
    if sum(degs) % 2:
        degs[0] += 1 if degs[0] != 6 else -1
    stubs = [v for v in range(n) for _ in range(degs[v])]
    rng.shuffle(stubs)
    g = Multigraph.from_pairs(list(zip(stubs[::2], stubs[1::2])), vertices=range(n))
    if len(g.components()) != 1 or not is_k_odd_connected(g, odd_connectivity):
        return None
    try:
        flow = find_nowhere_zero_flow(g)
    except NoFlow:
        return None
    cons = []
    for v in g.vertices:
        inc = g.incident(v)
        rng.shuffle(inc)
        if g.degree(v) == 5:
            c = VertexConstraint(v, tuple(inc[0:3]), tuple(inc[1:4]))
        elif g.degree(v) == 6:
            c = VertexConstraint(v, tuple(inc[0:2]), tuple(inc[2:4]), tuple(inc[4:6]))
        else:
            continue
        try:
            c.check(g)
        except InvalidConstraint:
            continue
        cons.append(c)
    perm = rng.choice(PERMS)
    flow = FlowAssignment({e: perm[x - 1] for e, x in flow.values.items()})
    return g, flow, cons


def cubic_corpus(count: int, seed: int = 0, sizes=(4, 6, 8, 10, 12, 14)):
    """Simple Hamiltonian graphs and pairing-model multigraphs, alternating."""
    out = []
    for i in range(count):
        n = sizes[i % len(sizes)]
        s = seed * 7919 + i
        out.append((f"cubic-{i}", gen_cubic_bridgeless(n, s) if i % 2 == 0 or n < 6 else gen_cubic_pairing(n, s)))
    return out


def mindeg3_corpus(count: int, seed: int = 0):
    """Bridgeless min-degree-3 multigraphs, n <= 12 and m <= 24; every third one planted."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        i = len(out)
        if i % 3 == 2:
            n = rng.randint(2, 5)
            base_m = rng.randint((3 * n + 1) // 2, 2 * n)
            kinds = tuple(rng.sample(("leaf", "leaf-special", "inner", "suppress"), rng.randint(1, 2)))
            g = gen_planted(n, base_m, rng.randrange(1 << 30), kinds, loops=rng.random() < 0.15)
        else:
            n = rng.randint(2, 12)
            m = rng.randint(max(3, (3 * n + 1) // 2), 24)
            g = gen_mindeg3(n, m, rng.randrange(1 << 30), loops=rng.random() < 0.1)
        if g.n <= 12 and g.m <= 24:
            out.append((f"mindeg3-{i}", g))
    return out


def general_corpus(count: int, seed: int = 0):
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(1, 12)
        g = gen_bridgeless(n, rng.randint(0, 2 * n + 4), rng.randrange(1 << 30), 8, loops=rng.random() < 0.2)
        assert is_bridgeless(g)
        out.append((f"general-{i}", g))
    return out


def weighted_cubic_instance(rng: random.Random):
    """Cubic bridgeless graph with a random partial perfect matching at weight 0."""
    from cyclecover.rainbow import perfect_matchings

    n = rng.choice((4, 6, 8, 10, 12))
    s = rng.randrange(1 << 30)
    g = gen_cubic_bridgeless(n, s) if rng.random() < 0.5 else gen_cubic_pairing(n, s)
    matchings = list(perfect_matchings(g, limit=2000))
    mt = sorted(rng.choice(matchings))
    zero = {e for e in mt if rng.random() < 0.7}
    return g, {e: 0 if e in zero else 1 for e in g.edge_ids}


def shape_host(name: str, seed: int):
    """Two copies of a circuit with the shape's weight-0 positions, joined by shuffled rungs."""
    from cyclecover.rainbow import SHAPES

    k, zeros = SHAPES[name]
    rng = random.Random(seed)
    perm = list(range(k))
    rng.shuffle(perm)
    pairs = ([(i, (i + 1) % k) for i in range(k)] + [(k + i, k + (i + 1) % k) for i in range(k)]
             + [(i, k + perm[i]) for i in range(k)])
    w = [0 if i + 1 in zeros else 1 for i in range(k)] * 2 + [1] * k
    return Multigraph.from_pairs(pairs), dict(enumerate(w))


def odd_connected_host(rng: random.Random, degrees=(4, 6, 8, 8), ell: int = 5, tries: int = 10_000):
    """Random connected multigraph with the given degree mix and no odd cut below ``ell``."""
    for _ in range(tries):
        n = rng.randint(2, 7)
        degs = [rng.choice(degrees) for _ in range(n)]
        if sum(degs) % 2:
            continue
        stubs = [v for v in range(n) for _ in range(degs[v])]
        rng.shuffle(stubs)
        g = Multigraph.from_pairs(list(zip(stubs[::2], stubs[1::2])))
        if len(g.components()) == 1 and is_k_odd_connected(g, ell):
            return g
    raise RuntimeError("no host found")
