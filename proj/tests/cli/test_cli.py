import json
import os
import pathlib
import subprocess

import pytest

BIN = os.environ["MULTIFOL_BIN"]
EXAMPLES = pathlib.Path(__file__).resolve().parents[2] / "docs" / "examples"
GOLDEN = sorted(p.name for p in EXAMPLES.iterdir() if (p / "expected.json").exists())


def run(args, cwd=None):
    return subprocess.run([BIN, *args], cwd=cwd, capture_output=True, text=True)


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def test_every_verb_has_an_example():
    verbs = {"validate", "complete", "classify", "equiv", "product", "dual", "weil-eval", "fiber-dim", "selftest"}
    assert verbs <= {p.name for p in EXAMPLES.iterdir()}


@pytest.mark.parametrize("verb", GOLDEN)
def test_golden(verb):
    d = EXAMPLES / verb
    r = run([*(d / "args").read_text().split(), "--pretty"], cwd=d)
    assert r.returncode == 0, r.stderr
    assert r.stdout == (d / "expected.json").read_text()


@pytest.mark.parametrize("verb", GOLDEN)
def test_output_is_byte_stable(verb, tmp_path):
    d = EXAMPLES / verb
    args = (d / "args").read_text().split()
    first = run(args, cwd=d)
    second = run(args, cwd=d)
    assert first.stdout == second.stdout
    out = tmp_path / "out.json"
    r = run([*args, "--output", str(out)], cwd=d)
    assert r.returncode == 0 and r.stdout == ""
    assert out.read_text() == first.stdout


def test_not_equivalent_is_data():
    d = EXAMPLES / "equiv"
    r = run(["equiv", "s.json", "t_other.json"], cwd=d)
    assert r.returncode == 0
    assert json.loads(r.stdout) == {"equivalent": False, "verdict": "NOT_EQUIVALENT"}


def test_parse_error_exits_2(tmp_path):
    r = run(["validate", write(tmp_path, "bad.json", "{not json")])
    assert r.returncode == 2
    assert json.loads(r.stdout)["error"]["code"] == "ParseError"


def test_missing_file_exits_2(tmp_path):
    r = run(["classify", str(tmp_path / "absent.json")])
    assert r.returncode == 2


def test_schema_error_exits_2_with_path(tmp_path):
    doc = {"poset": {"elements": ["a"], "leq": []}, "dims": {"a": "one"}, "maps": []}
    r = run(["complete", write(tmp_path, "s.json", doc)])
    assert r.returncode == 2
    err = json.loads(r.stdout)["error"]
    assert err["code"] == "SchemaError"
    assert err["witness"]["path"] == "/dims/a"


def test_domain_error_exits_1_with_witness(tmp_path):
    doc = {"elements": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]}
    r = run(["validate", write(tmp_path, "cyc.json", doc)])
    assert r.returncode == 1
    err = json.loads(r.stdout)["error"]
    assert err["code"] == "CycleError"
    assert err["witness"] is not None


def test_coherence_error_on_diamond(tmp_path):
    doc = {
        "poset": {"elements": ["a", "b", "c", "d"], "leq": [["a", "b"], ["a", "c"], ["b", "d"], ["c", "d"]]},
        "dims": {"a": 1, "b": 2, "c": 2, "d": 2},
        "maps": [
            {"from": "b", "to": "a", "matrix": [["1", "0"]]},
            {"from": "c", "to": "a", "matrix": [["1", "0"]]},
            {"from": "d", "to": "b", "matrix": [["1", "0"], ["0", "1"]]},
            {"from": "d", "to": "c", "matrix": [["0", "1"], ["1", "0"]]},
        ],
    }
    r = run(["complete", write(tmp_path, "s.json", doc)])
    assert r.returncode == 1
    assert json.loads(r.stdout)["error"]["code"] == "CoherenceError"


def test_max_poset_flag(tmp_path):
    doc = {"elements": [f"x{i}" for i in range(21)], "leq": []}
    path = write(tmp_path, "big.json", doc)
    r = run(["validate", path, "--kind", "poset"])
    assert r.returncode == 1
    assert json.loads(r.stdout)["error"]["code"] == "PosetTooLarge"
    small = write(tmp_path, "small.json", {"elements": ["a", "b", "c"], "leq": []})
    assert run(["validate", small, "--max-poset", "2"]).returncode == 1
    assert run(["validate", small, "--max-poset", "3"]).returncode == 0


def test_bad_arguments_exit_2():
    assert run([]).returncode == 2
    assert run(["frobnicate"]).returncode == 2
    assert run(["equiv", "only-one.json"]).returncode == 2


def test_selftest_lines():
    r = run(["selftest", "--seed", "7"])
    assert r.returncode == 0, r.stdout
    lines = r.stdout.splitlines()
    assert lines[0] == "seed 7"
    criteria = [l for l in lines if l.startswith(("PASS", "FAIL"))]
    assert len(criteria) == 9
    assert all(l.startswith("PASS") and " < " in l for l in criteria)


def test_selftest_detects_injected_fault():
    r = run(["selftest", "--inject-fault", "weil-table"])
    assert r.returncode == 1
    failing = [l for l in r.stdout.splitlines() if l.startswith("FAIL")]
    assert len(failing) == 1 and "[6]" in failing[0]
