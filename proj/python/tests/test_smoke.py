import json

import pytest

lda_lab = pytest.importorskip("lda_lab")


def test_simulate_attack_round_trip():
    fixture = lda_lab.simulate_json(protocol=2, n=5, seed=3, include_private=True)
    transcript = json.loads(fixture)
    assert transcript["dim"] == 10
    report = lda_lab.attack(fixture)
    assert lda_lab.recovered_key(report) == lda_lab.fixture_key(fixture)


def test_public_transcript_has_no_secrets():
    t = lda_lab.simulate(protocol=1, n=4, rep="burau", seed=1)
    assert t["dim"] == 4
    assert "private" not in t


def test_determinism():
    assert lda_lab.simulate_json(seed=9) == lda_lab.simulate_json(seed=9)
    t = lda_lab.simulate_json(n=4, seed=9)
    assert lda_lab.attack_json(t) == lda_lab.attack_json(t)


def test_demo_and_selftest():
    trials = lda_lab.demo(protocol=1, n=4, trials=3, seed=2)
    assert [t["match"] for t in trials] == [True] * 3
    assert all(passed for _, passed, _ in lda_lab.selftest())


def test_representation_shapes():
    gens = lda_lab.representation("lk", 4, q=5, t=7)
    assert len(gens) == 3
    assert len(gens[0]) == 6 and len(gens[0][0]) == 6
    assert len(lda_lab.representation("burau", 5)[0]) == 5


def test_errors():
    with pytest.raises(ValueError):
        lda_lab.attack_json("{not json")
    with pytest.raises(ValueError):
        lda_lab.simulate(n=3)
    t = lda_lab.simulate(n=5, seed=4)
    t["x"] = t["y"]
    t["x"][0][0] = "12345"
    with pytest.raises(lda_lab.MalformedTranscriptError):
        lda_lab.attack(t)
