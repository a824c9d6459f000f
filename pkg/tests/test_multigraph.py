import pytest
from hypothesis import given, strategies as st

from cyclecover.errors import InvalidEdge, InvalidExpansion, InvalidSplit, NotACycle
from cyclecover.generators import gen_cubic_bridgeless, gen_mindeg3, k4
from cyclecover.multigraph import (Multigraph, ReductionTrace, contract_edges, contract_traced, expand,
                                   expand_ends, identify, lift_cycle, replay, split_ends, split_off,
                                   suppress_degree_two, suppressed_paths)
from cyclecover.textformat import dumps, loads
from cyclecover.errors import GraphFormatError

pairs_st = st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=18)


def triangle():
    return Multigraph.from_pairs([(0, 1), (1, 2), (0, 2)])


def test_loop_counts_twice():
    g = Multigraph.from_pairs([(0, 0), (0, 1)])
    assert g.degree(0) == 3 and g.incident(0) == [0, 0, 1]


def test_contract_triangle_edge_gives_digon():
    h = contract_edges(triangle(), [0])
    assert h.n == 2 and h.m == 2 and sorted(h.edge_ids) == [1, 2]
    a, b = h.ends(1)
    assert a != b and set(h.ends(2)) == {a, b}


def test_contract_loop_is_deletion():
    g = Multigraph.from_pairs([(0, 0), (0, 1), (0, 1)])
    h = contract_edges(g, [0])
    assert sorted(h.edge_ids) == [1, 2] and h.n == 2


def test_contract_k4_hamilton_circuit():
    g = k4()  # edges 0:01 1:02 2:03 3:12 4:13 5:23
    h = contract_edges(g, [0, 3, 5, 2])  # 0-1-2-3-0
    assert h.n == 1 and sorted(h.edge_ids) == [1, 4] and all(h.is_loop(e) for e in h.edge_ids)


def test_contract_unknown_edge():
    with pytest.raises(InvalidEdge):
        contract_edges(triangle(), [9])


def test_suppress_path_sums_weights():
    g = Multigraph.from_pairs([(0, 1), (1, 2)], weights={0: 2, 1: 3})
    h, tr = suppress_degree_two(g)
    # endpoints have degree 1, only the middle vertex goes
    assert h.m == 1 and h.weight(h.edge_ids[0]) == 5 and len(tr) == 1


def test_suppress_circuit_stops_at_digon():
    h, tr = suppress_degree_two(Multigraph.from_pairs([(0, 1), (1, 2), (2, 0)]))
    assert h.n == 2 and h.m == 2 and len(tr) == 1
    assert all(h.degree(v) == 2 for v in h.vertices)


def test_suppress_cubic_unchanged():
    g = k4()
    h, tr = suppress_degree_two(g)
    assert h == g and len(tr) == 0


def test_split_off_distinct_neighbours():
    g = Multigraph.from_pairs([(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)])
    h, tr = split_off(g, 1, 0, 2)
    x = tr.records[0].new_vertex
    assert h.m == g.m and h.ends(0) == (1, x) and h.ends(1) == (x, 2) and h.degree(0) == 1


def test_split_off_two_loops():
    g = Multigraph.from_pairs([(0, 0), (0, 0), (0, 1), (0, 1)])
    h, tr = split_ends(g, 0, 0, 1)
    x = tr.records[0].new_vertex
    assert h.m == g.m
    assert not h.is_loop(0) and not h.is_loop(1)
    assert sorted(h.edges_between(0, x)) == [0, 1]


def test_split_errors():
    g = triangle()
    with pytest.raises(InvalidSplit):
        split_off(g, 1, 0, 1)
    with pytest.raises(InvalidSplit):
        split_ends(g, 0, 0, 0)


def test_expand_example_and_counts():
    g = Multigraph.from_pairs([(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4), (1, 3), (2, 4)])
    h, tr = expand(g, 0, {1, 2})
    r = tr.records[0]
    assert h.n == g.n + 1 and h.m == g.m + 1
    assert set(h.neighbors(r.v1)) == {1, 2, r.v2} and set(h.neighbors(r.v2)) == {3, 4, r.v1}
    back = contract_edges(h, [r.new_edge])
    assert sorted(back.degrees().values()) == sorted(g.degrees().values())


def test_expand_errors():
    with pytest.raises(InvalidExpansion):
        expand(triangle(), 0, {1, 2})
    g = Multigraph.from_pairs([(0, 1), (0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)])
    with pytest.raises(InvalidExpansion):
        expand(g, 0, {1, 2})
    with pytest.raises(InvalidExpansion):
        expand_ends(Multigraph.from_pairs([(0, 0), (0, 1), (0, 1)]), 0, (1, 2))


def test_lift_identity_and_suppressed_path():
    g = Multigraph.from_pairs([(0, 1), (1, 2), (2, 0), (0, 3), (3, 2)])
    assert lift_cycle(ReductionTrace.empty(g), {0, 1, 2}) == {0, 1, 2}
    h, tr = suppress_degree_two(g)
    for e, path in suppressed_paths(tr).items():
        if len(path) > 1:
            cyc = {e} | {x for x in h.edge_ids if x != e and not h.is_loop(x)}
            if h.is_even_subgraph(cyc):
                lifted = lift_cycle(tr, cyc)
                assert set(path) <= lifted and g.is_even_subgraph(lifted)


def test_lift_through_split_maps_back():
    g = Multigraph.from_pairs([(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
    h, tr = split_ends(g, 0, 0, 1)
    assert lift_cycle(tr, {0, 1, 2}) == {0, 1, 2}
    assert g.is_even_subgraph({0, 1, 2})


def test_lift_rejects_odd_set():
    g = triangle()
    with pytest.raises(NotACycle):
        lift_cycle(ReductionTrace.empty(g), {0})


def test_identify_keeps_ids():
    g = Multigraph.from_pairs([(0, 1), (1, 2), (2, 0)])
    h = identify(g, 1, 0)
    assert h.n == 2 and h.is_loop(0) and sorted(h.edge_ids) == [0, 1, 2]


@given(pairs_st)
def test_loads_dumps_roundtrip(pairs):
    g = Multigraph.from_pairs(pairs)
    assert dumps(loads(dumps(g))) == dumps(g)
    assert sum(g.degree(v) for v in g.vertices) == 2 * g.m


def test_format_errors():
    for text in ("e 0 1 2\n", "mg 2 1\nv 0\nv 1\ne 0 0 1\ne 0 0 1\n", "mg 3 0\nv 0\n", "mg 1 1\nv 0\ne 0 0 x\n"):
        with pytest.raises(GraphFormatError):
            loads(text)


@given(st.integers(0, 10_000), st.integers(2, 5))
def test_random_surgery_replay_and_lift(seed, rounds):
    import random
    rng = random.Random(seed)
    g = gen_mindeg3(rng.randint(3, 7), rng.randint(8, 14), seed)
    h, trace = g, ReductionTrace.empty(g)
    for _ in range(rounds):
        v = rng.choice([v for v in h.vertices if h.degree(v) >= 2])
        es = sorted(set(h.incident(v)))
        if len(es) >= 2 and rng.random() < 0.5:
            h2, t = split_ends(h, v, *rng.sample(es, 2))
        else:
            e = rng.choice(list(h.edge_ids))
            h2, t = contract_traced(h, [e])
        h, trace = h2, trace.then(t)
    h3, t3 = suppress_degree_two(h)
    trace = trace.then(t3)
    assert replay(g, trace.records) == h3
    # any fundamental cycle of the result lifts to an even set of g
    from cyclecover.oracle import cycle_space_basis
    for b in cycle_space_basis(h3).basis:
        assert g.is_even_subgraph(lift_cycle(trace, b))


@given(st.integers(0, 10_000))
def test_edge_ids_never_reused(seed):
    g = gen_cubic_bridgeless(8, seed)
    v = g.vertices[0]
    h, tr = split_ends(g, v, *g.incident(v)[:2])
    h2, tr2 = suppress_degree_two(h)
    new = set(h2.edge_ids) - set(g.edge_ids)
    assert all(e >= g.m for e in new)
