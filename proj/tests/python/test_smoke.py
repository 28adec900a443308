import json
import os
from pathlib import Path

import pytest

import remap

FIXTURES = Path(os.environ.get("REMAP_FIXTURE_DIR", Path(__file__).resolve().parents[2] / "fixtures"))


def astarb():
    return remap.load_machine(FIXTURES / "astarb.json")


def test_learn_exact_recovers_astarb():
    result = remap.learn(astarb())
    assert result["isomorphic"]
    assert result["eq_queries"] == 2
    assert result["hypothesis_sizes"] == [2, 3]
    assert len(result["machine"]["states"]) == 3
    assert [e["kind"] for e in result["trace"]].count("eq_query") == 2


def test_learn_pac_is_seeded():
    a = remap.learn(astarb(), teacher="pac", samples=20, seed=5)
    b = remap.learn(astarb(), teacher="pac", samples=20, seed=5)
    assert a["machine"] == b["machine"] and a["trace"] == b["trace"]


def test_lstar_and_regex():
    target = remap.from_regex_union(["a*b"], ["a", "b"])
    assert remap.isomorphic(target, astarb())
    assert remap.lstar(target)["isomorphic"]
    assert remap.run(target, ["a", "a", "b"]) == "1"
    assert remap.run(target, ["b", "a"]) == "0"


def test_reward_machine_target_and_convert():
    rm = remap.load_machine(FIXTURES / "rm_astarb.json")
    truth = remap.ground_truth(rm)
    assert truth["kind"] == "moore"
    assert remap.learn(rm)["isomorphic"]
    mealy = remap.convert("moore2mealy", astarb())
    assert mealy["kind"] == "mealy"
    assert remap.isomorphic(remap.convert("mealy2moore", mealy), astarb())


def test_experiment_exact_grid_entry():
    assert remap.experiment(astarb(), [None], trials=3, eval_random=20) == [1.0]


def test_errors_are_translated():
    with pytest.raises(remap.RemapError):
        remap.learn(astarb(), teacher="pac")
    with pytest.raises(remap.RemapError):
        remap.convert("nope", astarb())
    with pytest.raises(remap.RemapError):
        remap.run(astarb(), ["z"])


def test_json_text_is_accepted():
    assert remap.isomorphic(json.dumps(astarb()), astarb())
