import random

import pytest
from hypothesis import given, settings, strategies as st

from cyclecover.cover.core import CycleCover
from cyclecover.errors import Infeasible, InvalidParameter, TooLarge
from cyclecover.generators import (NAMED, circuit, gen_bridgeless, gen_cubic_bridgeless, gen_mindeg3, k4,
                                   petersen)
from cyclecover.multigraph import Multigraph
from cyclecover.oracle import (cycle_space_basis, cycle_space_dimension, shortest_cover,
                               shortest_cover_bruteforce, shortest_cover_milp, verify_cover)

# optimum over covers by at most three cycles, brute force and MILP agreeing
GOLDEN = {"K4": 8, "theta": 4, "petersen": 22, "K33": 12, "prism": 12, "cube": 16, "K5": 10, "host17": 9}


def test_basis_dimensions():
    tree = Multigraph.from_pairs([(0, 1), (1, 2), (1, 3)])
    assert cycle_space_basis(tree).dimension == 0
    b = cycle_space_basis(circuit(6))
    assert b.dimension == 1 and b.basis == [frozenset(range(6))]
    assert cycle_space_dimension(k4()) == 3
    assert cycle_space_dimension(Multigraph.from_pairs([(0, 0), (1, 1)])) == 2


@given(st.integers(0, 100_000), st.integers(1, 9), st.integers(0, 12))
def test_basis_is_even_and_independent(seed, n, extra):
    g = gen_bridgeless(n, extra, seed, 8, loops=True)
    b = cycle_space_basis(g)
    assert b.dimension == g.m - g.n + len(g.components())
    for c in b.basis:
        assert g.is_even_subgraph(c)
    # independence: each basis element owns a distinct non-forest edge
    own = [c - b.forest for c in b.basis]
    assert all(len(x) == 1 for x in own) and len(set().union(*own) if own else set()) == b.dimension


def test_circuit_optimum():
    c = shortest_cover_bruteforce(circuit(5))
    assert c.total_length == 5 and len(c.cycles) == 1


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_goldens(name):
    assert shortest_cover(NAMED[name]()).total_length == GOLDEN[name]


@pytest.mark.parametrize("name", ["K4", "theta", "K33", "host17"])
def test_goldens_milp(name):
    assert shortest_cover_milp(NAMED[name]()).total_length == GOLDEN[name]


def test_petersen_needs_four_cycles_for_21():
    assert shortest_cover_milp(petersen(), max_cycles=4).total_length == 21


def test_k4_optimum_is_two_four_circuits():
    c = shortest_cover_bruteforce(k4())
    assert sorted(len(x) for x in c.cycles) == [4, 4]


def test_monotone_in_cycle_count():
    g = k4()
    with pytest.raises(Infeasible):
        shortest_cover_bruteforce(g, 1)
    two = shortest_cover_bruteforce(g, 2).total_length
    three = shortest_cover_bruteforce(g, 3).total_length
    assert two >= three


def test_petersen_has_no_two_cycle_cover():
    with pytest.raises(Infeasible):
        shortest_cover_bruteforce(petersen(), 2)


def test_oracle_errors():
    with pytest.raises(Infeasible):
        shortest_cover_bruteforce(Multigraph.from_pairs([(0, 1)]))
    with pytest.raises(InvalidParameter):
        shortest_cover_bruteforce(k4(), 0)
    with pytest.raises(TooLarge):
        shortest_cover_bruteforce(gen_cubic_bridgeless(30, 0))


def _relabel(g, rng):
    vs = sorted(g.vertices)
    perm = dict(zip(vs, rng.sample(range(100, 100 + len(vs)), len(vs))))
    es = list(g.edge_ids)
    rng.shuffle(es)
    return Multigraph.from_pairs([(perm[g.ends(e)[0]], perm[g.ends(e)[1]]) for e in es])


@given(st.integers(0, 100_000))
def test_relabel_invariance(seed):
    rng = random.Random(seed)
    g = gen_mindeg3(rng.randint(2, 6), rng.randint(5, 11), seed)
    assert shortest_cover(g).total_length == shortest_cover(_relabel(g, rng)).total_length


@settings(max_examples=15)
@given(st.integers(0, 100_000))
def test_bruteforce_agrees_with_milp(seed):
    rng = random.Random(seed)
    g = gen_bridgeless(rng.randint(2, 7), rng.randint(0, 7), seed, 6, loops=rng.random() < 0.3)
    for k in (2, 3):
        try:
            a = shortest_cover_bruteforce(g, k)
        except Infeasible:
            with pytest.raises(Infeasible):
                shortest_cover_milp(g, k)
            continue
        b = shortest_cover_milp(g, k)
        assert a.total_length == b.total_length
        assert verify_cover(g, a, k) and verify_cover(g, b, k)


def test_verify_cover_flags_problems():
    g = k4()
    good = shortest_cover_bruteforce(g)
    assert verify_cover(g, good)
    c0 = sorted(good.cycles[0])
    dropped = [frozenset(good.cycles[0] - {c0[0]})] + list(good.cycles[1:])
    check = verify_cover(g, dropped)
    odd = {p["vertex"] for p in check.problems if p["kind"] == "odd_degree"}
    assert odd == set(g.ends(c0[0]))
    only_one = verify_cover(g, [good.cycles[0]])
    assert {p["edge"] for p in only_one.problems if p["kind"] == "uncovered"} == set(g.edge_ids) - good.cycles[0]
    assert not verify_cover(g, CycleCover(good.cycles, good.total_length + 1))
    assert not verify_cover(g, list(good.cycles) * 2)
