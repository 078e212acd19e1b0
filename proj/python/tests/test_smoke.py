import random

import pytest

import alae


def test_self_match():
    db = alae.Database.from_fasta(">self\nGCTAG\n")
    res = db.search("GCTAG", 5)
    assert res["hits"] == [("self", 1, 5, 5, 5)]
    assert res["counters"]["calculated"] > 0


def test_count_and_locate():
    db = alae.Database.from_fasta(">a\nGCTAGC\n>b\nTTGC\n")
    assert db.size == 10
    assert db.records == ["a", "b"]
    assert db.count("GC") == 3
    assert db.locate("GC") == [("a", 1), ("a", 5), ("b", 3)]
    assert db.count("AAAA") == 0


def test_save_and_load(tmp_path):
    db = alae.Database.from_fasta(">a\nGCTAGCTAGGATCC\n")
    path = str(tmp_path / "x.idx")
    db.save(path)
    back = alae.Database.load(path)
    assert back.locate("TAG") == db.locate("TAG")
    assert back.alphabet == "dna"


def test_modes_agree_with_oracle():
    rng = random.Random(3)
    text = "".join(rng.choice("ACGT") for _ in range(600))
    query = text[100:160]
    db = alae.Database.from_fasta(">t\n" + text + "\n")
    expect = sorted((e, p, s) for e, p, s, _ in alae.oracle_search(text, query, 12))
    assert expect
    for mode in ("alae", "bwtsw", "oracle"):
        hits = db.search(query, 12, mode=mode, threads=2)["hits"]
        assert sorted((end, p, s) for _, _, end, p, s in hits) == expect


def test_scalar_helpers():
    assert alae.q_value((1, -3, -5, -2)) == 4
    assert alae.length_bounds((1, -3, -5, -2), 5, 3) == (3, 5)
    c, e = alae.entry_bound((1, -3, -5, -2), 4)
    assert abs(c - 4.47) <= 0.01 and abs(e - 0.6038) <= 0.001
    assert abs(alae.analysis_params((1, -1, -5, -2), 4)["k2"] - 2 * 3 ** 0.5) < 1e-9


def test_errors_carry_codes():
    with pytest.raises(alae.AlaeError) as info:
        alae.Database.from_fasta(">a\nGCNA\n")
    assert info.value.code == "UnknownSymbol"
    assert alae.Database.from_fasta(">a\nGCNA\n", lenient=True).size == 4
    with pytest.raises(alae.AlaeError) as info:
        alae.entry_bound((1, -3, -5, -2), 2)
    assert info.value.code == "SigmaTooSmall"
    with pytest.raises(alae.AlaeError):
        alae.q_value((1, 3, -5, -2))
