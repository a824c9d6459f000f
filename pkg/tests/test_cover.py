import random
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from cyclecover.cover import (BOUNDS, CycleCover, chord_parity_partition, cover_cubic, cover_general,
                              cover_mindeg3, verify_bound)
from cyclecover.cover.core import cover_problems
from cyclecover.errors import InvalidInput, NotBridgeless, ParityViolation
from cyclecover.generators import NAMED, circuit, gen_bridgeless, gen_cubic_bridgeless, gen_mindeg3, host17
from cyclecover.multigraph import Multigraph
from cyclecover.oracle import verify_cover
from cyclecover.rainbow import Circuit

C4 = Circuit([1, 2, 3, 4], [10, 11, 12, 13])  # edge 10 joins v1 v2, ..., 13 joins v4 v1
C5 = Circuit([1, 2, 3, 4, 5], [10, 11, 12, 13, 14])


def test_partition_c4_opposite_marks():
    p = chord_parity_partition(C4, {1, 3})
    assert {p.part_a, p.part_b} == {frozenset({10, 11}), frozenset({12, 13})}
    assert p.part_a == {10, 11}  # tie goes to the class with the lowest edge id


def test_partition_unmarked():
    p = chord_parity_partition(C4, set())
    assert p.part_a == frozenset() and p.part_b == {10, 11, 12, 13}


def test_partition_c5_adjacent_marks():
    p = chord_parity_partition(C5, {1, 2})
    assert p.part_a == {10} and p.part_b == {11, 12, 13, 14}


def test_partition_weighted_prefers_fewer_weight_one_edges():
    w = {10: 1, 11: 1, 12: 0, 13: 0}
    p = chord_parity_partition(C4, {1, 3}, w)
    assert p.part_a == {12, 13}


def test_partition_odd_marks():
    with pytest.raises(ParityViolation):
        chord_parity_partition(C5, {1})


@given(st.integers(3, 12), st.data())
def test_partition_invariants(k, data):
    c = Circuit(list(range(k)), list(range(100, 100 + k)))
    marked = data.draw(st.sets(st.integers(0, k - 1)).filter(lambda s: len(s) % 2 == 0))
    p = chord_parity_partition(c, marked)
    assert p.part_a | p.part_b == set(c.edges) and not p.part_a & p.part_b
    assert len(p.part_a) <= len(p.part_b)
    for i, v in enumerate(c.vertices):
        before, after = c.edges[i - 1], c.edges[i]
        split = (before in p.part_a) != (after in p.part_a)
        assert split == (v in marked)


def _check(report, limit=None):
    assert verify_bound(report)
    assert not verify_cover(report.graph, report.cover).problems
    if limit is not None:
        assert report.cover.total_length <= limit


def test_general_circuit():
    r = cover_general(circuit(7))
    _check(r, 7)
    assert sum(1 for c in r.cover.cycles if c) == 1


def test_general_examples():
    _check(cover_general(NAMED["theta"]()), 5)
    _check(cover_general(NAMED["K4"]()), 10)
    assert cover_general(NAMED["theta"]()).cover.total_length == 4


def test_general_with_loops_and_degree_two():
    g = Multigraph.from_pairs([(0, 0), (0, 1), (1, 2), (2, 0), (2, 2), (1, 1)])
    _check(cover_general(g))


def test_general_rejects_bridge():
    with pytest.raises(NotBridgeless):
        cover_general(Multigraph.from_pairs([(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]))


@pytest.mark.parametrize("name,limit", [("K4", 9), ("petersen", 24), ("K33", 14), ("prism", 14), ("cube", 25)])
def test_cubic_examples(name, limit):
    r = cover_cubic(NAMED[name]())
    _check(r, limit)
    assert r.won in ("A", "B")
    f_size = sum(k * v for k, v in r.d_histogram.items())
    assert 3 * f_size == 2 * r.m  # a 2-factor of a cubic graph


def test_cubic_rejects_non_cubic():
    with pytest.raises(InvalidInput):
        cover_cubic(NAMED["K5"]())


@pytest.mark.parametrize("name,limit", [("K4", 9), ("K5", 16), ("host17", 11), ("petersen", 24), ("theta", 4)])
def test_mindeg3_examples(name, limit):
    _check(cover_mindeg3(NAMED[name]()), limit)


def test_host17_cover():
    r = cover_mindeg3(host17())
    assert r.m == 7 and 27 * r.cover.total_length <= 44 * 7


def test_mindeg3_rejects_low_degree():
    with pytest.raises(InvalidInput):
        cover_mindeg3(circuit(4))


def test_verify_bound_catches_uncovered_edge():
    r = cover_cubic(NAMED["petersen"]())
    assert verify_bound(r)
    cycles = [set(c) for c in r.cover.cycles]
    e = min(r.graph.edge_ids)
    for c in cycles:
        c.discard(e)
    bad = replace(r, cover=CycleCover([frozenset(c) for c in cycles], r.cover.total_length))
    check = verify_bound(bad)
    assert not check and any(str(e) in p for p in check.problems)


def test_verify_bound_catches_tampered_length():
    r = cover_cubic(NAMED["K4"]())
    bad = replace(r, cover=CycleCover(r.cover.cycles, r.cover.total_length - 1))
    assert not verify_bound(bad)


def test_verify_bound_catches_excess_length():
    g = NAMED["K4"]()
    r = cover_cubic(g)
    tri = [frozenset({0, 1, 3}), frozenset({0, 2, 4}), frozenset({1, 2, 5})]
    long = CycleCover.build(g, tri)
    assert not cover_problems(g, long.cycles)
    assert long.total_length == 9 and verify_bound(replace(r, cover=long))
    four = CycleCover.build(g, [frozenset({0, 1, 4, 5}), frozenset({0, 2, 3, 5}), frozenset({1, 2, 3, 4})])
    assert not verify_bound(replace(r, cover=four))  # 12 > 34 * 6 / 21


def test_bounds_table():
    assert {k: (v.numerator, v.denominator) for k, v in BOUNDS.items()} == {
        "general": (5, 3), "cubic": (34, 21), "mindeg3": (44, 27)}


@given(st.integers(0, 100_000), st.sampled_from([4, 6, 8, 10, 12, 14]))
def test_cubic_random(seed, n):
    r = cover_cubic(gen_cubic_bridgeless(n, seed))
    _check(r)
    assert r.diagnostics["circuit_checks_failed"] == []


@given(st.integers(0, 100_000), st.integers(1, 10), st.integers(0, 14), st.booleans())
def test_general_random(seed, n, extra, loops):
    _check(cover_general(gen_bridgeless(n, extra, seed, 8, loops)))


@given(st.integers(0, 100_000), st.integers(2, 9), st.integers(0, 8), st.booleans())
def test_mindeg3_random(seed, n, extra, loops):
    g = gen_mindeg3(n, (3 * n + 1) // 2 + extra, seed, loops)
    _check(cover_mindeg3(g))


def test_local_triple_identity():
    g = NAMED["petersen"]()
    r = cover_cubic(g)
    # each circuit costs its length plus twice an overlap
    for length, cost in r.diagnostics["circuit_contributions"]:
        assert cost >= length and (cost - length) % 2 == 0


# second cover is even only after split vertices are merged back
IDENTIFIED_PARITY = [(6, 5), (5, 9), (9, 7), (7, 1), (1, 2), (2, 0), (0, 8), (8, 4), (4, 3), (3, 6), (0, 4), (1, 5),
                     (2, 5), (3, 8), (6, 3), (7, 3), (9, 3), (2, 6), (0, 2)]
# splitting down to degree four cuts off a bare circuit
SPLIT_CIRCUIT = [(11, 3), (3, 10), (10, 2), (2, 7), (7, 1), (1, 4), (4, 8), (8, 5), (5, 6), (6, 9), (9, 0), (0, 11),
                 (0, 3), (1, 3), (2, 0), (4, 6), (5, 9), (7, 11), (8, 6), (10, 11), (10, 1), (7, 11), (8, 1), (5, 3),
                 (5, 1), (4, 2), (4, 3), (10, 6), (6, 3), (4, 0), (9, 2), (5, 10)]


@pytest.mark.parametrize("pairs", [IDENTIFIED_PARITY, SPLIT_CIRCUIT], ids=["identified", "split-circuit"])
def test_mindeg3_regressions(pairs):
    _check(cover_mindeg3(Multigraph.from_pairs(pairs)))
