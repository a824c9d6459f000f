import json
import random

import pytest
from hypothesis import given, strategies as st

from cyclecover import cli
from cyclecover.corpus import CorpusSpec, choose_method, run_corpus, summary_table
from cyclecover.cuts import find_bridges
from cyclecover.errors import InvalidParameter
from cyclecover.generators import (NAMED, gen_bridgeless, gen_cubic_bridgeless, gen_cubic_pairing, gen_mindeg3,
                                   gen_planted, k4)
from cyclecover.textformat import dumps, write_graph


def _edges(g):
    return [(e, g.ends(e)) for e in sorted(g.edge_ids)]


@given(st.integers(0, 10_000), st.sampled_from([4, 6, 8, 10, 14]))
def test_cubic_generator_contract(seed, n):
    g = gen_cubic_bridgeless(n, seed)
    assert _edges(g) == _edges(gen_cubic_bridgeless(n, seed))
    assert g.is_cubic() and not find_bridges(g) and len(g.components()) == 1


def test_n4_is_k4():
    for seed in range(10):
        g = gen_cubic_bridgeless(4, seed)
        assert {frozenset(g.ends(e)) for e in g.edge_ids} == {frozenset(g.ends(e)) for e in k4().edge_ids}


def test_generator_parameters():
    with pytest.raises(InvalidParameter):
        gen_cubic_bridgeless(7, 0)
    with pytest.raises(InvalidParameter):
        gen_cubic_bridgeless(2, 0)
    with pytest.raises(InvalidParameter):
        gen_cubic_pairing(5, 0)


@given(st.integers(0, 10_000))
def test_other_generators_deterministic(seed):
    assert _edges(gen_cubic_pairing(8, seed)) == _edges(gen_cubic_pairing(8, seed))
    assert _edges(gen_mindeg3(7, 14, seed)) == _edges(gen_mindeg3(7, 14, seed))
    assert _edges(gen_planted(4, 7, seed)) == _edges(gen_planted(4, 7, seed))
    assert _edges(gen_bridgeless(6, 6, seed)) == _edges(gen_bridgeless(6, 6, seed))
    g = gen_mindeg3(7, 14, seed)
    assert g.min_degree() >= 3 and not find_bridges(g)


def test_choose_method():
    assert choose_method(NAMED["petersen"]()) == "cubic"
    assert choose_method(NAMED["K5"]()) == "mindeg3"
    assert choose_method(gen_bridgeless(5, 0, 1)) == "general"


@pytest.fixture
def petersen_file(tmp_path):
    p = tmp_path / "petersen.txt"
    write_graph(NAMED["petersen"](), p)
    return p


def test_cli_cover_then_verify(petersen_file, tmp_path, capsys):
    out = tmp_path / "cover.json"
    assert cli.main(["cover", "--input", str(petersen_file), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["construction"] == "cubic" and doc["bound"] == {"num": 34, "den": 21}
    assert doc["m"] == 15 and 21 * doc["total_length"] <= 34 * 15
    assert "method cubic" in capsys.readouterr().err
    assert cli.main(["verify", "--input", str(petersen_file), "--cover", str(out)]) == 0


def test_cli_verify_tampered(petersen_file, tmp_path):
    out = tmp_path / "cover.json"
    cli.main(["cover", "--input", str(petersen_file), "--out", str(out)])
    doc = json.loads(out.read_text())
    doc["cycles"][0] = doc["cycles"][0][1:]
    out.write_text(json.dumps(doc))
    assert cli.main(["verify", "--input", str(petersen_file), "--cover", str(out)]) == 1


def test_cli_oracle_k4(tmp_path, capsys):
    p = tmp_path / "k4.txt"
    p.write_text(dumps(k4()))
    assert cli.main(["oracle", "--input", str(p), "--max-cycles", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["optimum"] == 8


def test_cli_bad_input(tmp_path):
    assert cli.main(["cover", "--input", str(tmp_path / "missing.txt")]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("mg 2 1\ne 0 0 1\n")
    assert cli.main(["cover", "--input", str(bad)]) == 2


def test_cli_gen_roundtrip(tmp_path, capsys):
    p = tmp_path / "g.txt"
    assert cli.main(["gen", "--kind", "cubic", "--n", "10", "--seed", "3", "--out", str(p)]) == 0
    assert p.read_text() == dumps(gen_cubic_bridgeless(10, 3))


def test_corpus_reproducible():
    spec = CorpusSpec.parse("random-cubic:n=8,count=6,seed=2")
    a = summary_table(run_corpus(spec))
    b = summary_table(run_corpus(CorpusSpec.parse("random-cubic:n=8,count=6,seed=2"), workers=2))
    assert a == b
    assert "6 graphs, 0 failed" in a


def test_corpus_table_has_oracle_column():
    rows = run_corpus(CorpusSpec.parse("named:names=K4+theta"))
    assert {r.graph_id: r.optimum for r in rows} == {"K4": 8, "theta": 4}
    assert all(r.optimum <= r.length for r in rows)


def test_corpus_spec_errors():
    with pytest.raises(InvalidParameter):
        CorpusSpec.parse("exhaustive-cubic:n=6")


def test_cli_corpus(capsys):
    assert cli.main(["corpus", "--spec", "random-mindeg3:n=5,m=9,count=3,seed=1"]) == 0
    assert "3 graphs, 0 failed" in capsys.readouterr().out
