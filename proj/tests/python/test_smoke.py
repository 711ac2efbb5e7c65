import json
import pathlib

import pytest

import multifol

EXAMPLES = pathlib.Path(__file__).resolve().parents[2] / "docs" / "examples"


def load(verb, name):
    return json.loads((EXAMPLES / verb / name).read_text())


def golden(verb):
    return json.loads((EXAMPLES / verb / "expected.json").read_text())


def test_validate_matches_cli():
    assert multifol.validate(load("validate", "diamond.json")) == golden("validate")


def test_complete_matches_cli():
    assert multifol.complete(load("complete", "antichain.json")) == golden("complete")


def test_classify_matches_cli():
    assert multifol.classify(load("classify", "twisted_chain.json")) == golden("classify")


def test_dual_and_product():
    assert multifol.dual(load("dual", "chain.json")) == golden("dual")
    s = load("product", "s.json")
    assert multifol.product(s, s) == golden("product")


def test_equiv_verdicts():
    s = load("equiv", "s.json")
    assert multifol.equiv(s, load("equiv", "t.json"))["verdict"] == "EQUIVALENT"
    assert multifol.equiv(s, load("equiv", "t_other.json"))["verdict"] == "NOT_EQUIVALENT"


def test_weil_eval_first_jet():
    out = multifol.weil_eval(load("weil-eval", "dual_numbers.json"), load("weil-eval", "square.json"))
    assert out["value"] == [["9", "30"]]


def test_fiber_dim():
    out = multifol.fiber_dim(load("fiber-dim", "weil_system.json"), load("fiber-dim", "object.json"))
    assert out["dim"] == 3


def test_errors_carry_code_and_witness():
    with pytest.raises(multifol.MultifolError) as info:
        multifol.validate({"elements": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]})
    assert info.value.code == "CycleError"
    assert info.value.witness is not None
    with pytest.raises(multifol.MultifolError) as info:
        multifol.validate({"elements": ["a", "b", "c"], "leq": []}, max_poset=2)
    assert info.value.code == "PosetTooLarge"
    with pytest.raises(multifol.MultifolError) as info:
        multifol.complete({"poset": {"elements": ["a"]}, "dims": {"a": "x"}, "maps": []})
    assert info.value.code == "SchemaError"


def test_selftest():
    results = multifol.selftest(seed=3)
    assert [r["id"] for r in results] == list(range(1, 10))
    assert all(r["passed"] for r in results)
