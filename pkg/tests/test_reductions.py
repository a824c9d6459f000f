import random

from hypothesis import given, strategies as st

from cyclecover.cover.reductions import (INNER_TABLE, KINDS, inner_assignment, irreducible_bundles,
                                         leaf_assignment, reduce_parallel)
from cyclecover.cover import cover_general
from cyclecover.cuts import is_bridgeless
from cyclecover.generators import gen_planted, host17, k4, k5, petersen, plant, gen_mindeg3
from cyclecover.multigraph import Multigraph
from cyclecover.oracle import cycle_space_dimension, shortest_cover, verify_cover


def test_inner_row_three_odd_k_odd():
    es = [1, 2, 3, 4, 5]
    assert inner_assignment(es, [True, True, True]) == [[1, 2, 3], [4], [5]]


def test_inner_table_complete():
    assert set(INNER_TABLE) == {(i, p) for i in range(4) for p in (0, 1)}


@given(st.integers(2, 9), st.lists(st.booleans(), min_size=3, max_size=3))
def test_inner_assignment_fixes_parity(k, odd):
    es = list(range(k))
    parts = inner_assignment(es, odd)
    for o, part in zip(odd, parts):
        assert (o + len(part)) % 2 == 0
    assert set().union(*map(set, parts)) == set(es)
    assert sum(map(len, parts)) <= k + 1


def test_leaf_even_goes_to_one_cycle():
    assert leaf_assignment([7, 8, 9, 10]) == [[7, 8, 9, 10], [], []]
    parts = leaf_assignment([7, 8, 9])
    assert sorted(map(len, parts)) == [0, 2, 2]


def test_simple_graph_has_no_reduction():
    assert reduce_parallel(k4()) is None
    assert reduce_parallel(k5()) is None
    assert reduce_parallel(petersen()) is None


def test_host17_bundle_is_irreducible():
    assert reduce_parallel(host17()) is None
    assert (3, 3, 5) in irreducible_bundles(host17())


def test_scan_order_prefers_leaf():
    g = Multigraph.from_pairs([(0, 1)] * 3 + [(1, 2), (1, 2), (1, 3), (2, 3), (2, 3), (3, 1)])
    red = reduce_parallel(g)
    assert red is not None and red.kind == "leaf" and red.v1 == 0 and red.budget == 4


def _lift_and_check(g, red, sub):
    lifted = red.lift([set(c) for c in sub])
    check = verify_cover(g, [frozenset(c) for c in lifted])
    assert check.ok, check.problems
    extra = check.length - sum(len(c) for c in sub)
    assert extra <= red.budget, (red.kind, red.k, extra, red.budget)
    return extra


@given(st.integers(0, 1_000_000), st.sampled_from(KINDS), st.integers(2, 6))
def test_lift_from_optimum_within_budget(seed, kind, k):
    rng = random.Random(seed)
    g = plant(gen_mindeg3(rng.randint(3, 5), rng.randint(5, 9), seed), kind, k, rng)
    red = reduce_parallel(g)
    assert red is not None
    assert red.graph.m < g.m
    if not is_bridgeless(red.graph) or cycle_space_dimension(red.graph) > 10:
        return
    sub = shortest_cover(red.graph).cycles
    _lift_and_check(g, red, sub)


@given(st.integers(0, 1_000_000))
def test_lift_from_any_cover_within_budget(seed):
    rng = random.Random(seed)
    g = gen_planted(rng.randint(2, 6), rng.randint(6, 12), seed)
    red = reduce_parallel(g)
    assert red is not None
    sub = cover_general(red.graph).cover.cycles
    _lift_and_check(g, red, sub)


def test_every_kind_reachable():
    seen = set()
    for seed in range(200):
        rng = random.Random(seed)
        kind = KINDS[seed % 4]
        g = plant(gen_mindeg3(4, 7, seed), kind, 4, rng)
        red = reduce_parallel(g)
        seen.add(red.kind)
    assert seen == set(KINDS)
