"""Command-line surface: outputs, exit codes, determinism, round trips."""

import json

import pytest

from dlq import (
    RootedForest,
    classify_forest,
    interpretation_from_obj,
)
from dlq.cli import run

KB_TEXT = "A(a).\nA SubClassOf exists (r).B.\n"
MODEL_TEXT = (
    '{"domain":["d","e"],"concepts":{"A":["d"],"B":["e"]},'
    '"roles":{"r":[["d","e"]]},"names":{"a":"d"}}'
)


@pytest.fixture
def files(tmp_path):
    kb = tmp_path / "kb.dl"
    kb.write_text(KB_TEXT, encoding="utf-8")
    model = tmp_path / "model.json"
    model.write_text(MODEL_TEXT, encoding="utf-8")

    def query(text):
        path = tmp_path / f"q{abs(hash(text)) % 10_000}.cq"
        path.write_text(text, encoding="utf-8")
        return str(path)

    return str(kb), str(model), query


def test_entails_json_and_exit_codes(files, capsys):
    kb, _, query = files
    code = run(["entails", kb, query("A(?x), r(?x,?y), B(?y)"), "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["entailed"] is True

    code = run(["entails", kb, query("A(?x), B(?x)"), "--json", "--countermodel"])
    out = json.loads(capsys.readouterr().out)
    assert code == 1
    assert out["entailed"] is False
    assert out["selection"]
    assert out["countermodel"] is not None


def test_sat_exit_codes(files, capsys, tmp_path):
    kb, _, _ = files
    assert run(["sat", kb]) == 0
    assert capsys.readouterr().out.strip() == "satisfiable"
    bad = tmp_path / "bad.dl"
    bad.write_text("A(a). A SubClassOf Bot.", encoding="utf-8")
    assert run(["sat", str(bad)]) == 1
    assert capsys.readouterr().out.strip() == "unsatisfiable"


def test_rollup_output(files, capsys):
    _, _, query = files
    assert run(["rollup", query("A(?x), r(?x,?y), s(?x,?y), B(?y)")]) == 0
    assert capsys.readouterr().out.strip() == "(A and exists (r & s).B)"
    assert run(["rollup", query("r(?x,?x)")]) == 1


def test_forkrew_maximal_paper_example(files, capsys):
    _, _, query = files
    q = query("A(?x), B(?y), C(?z), D(?v), r(?x,?y), r(?x,?z), s(?v,?y), r(?v,?z)")
    assert run(["forkrew", q, "--maximal"]) == 0
    printed = capsys.readouterr().out.strip()
    assert printed == "A(?v0), B(?v1), C(?v2), D(?v0), r(?v0,?v1), r(?v0,?v2), s(?v0,?v1)"
    assert run(["forkrew", q]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 2


def test_splittings_and_spoilers(files, capsys):
    _, _, query = files
    assert run(["splittings", query("r(?x,?y)"), "--names", "a"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 3
    assert run(["spoilers", query("A(?x)"), "--names", "a", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["super_spoilers"] == [["Top SubClassOf not A", "not A(a)"]]


def test_unravel_round_trip(files, capsys):
    _, model, _ = files
    assert run(["unravel", model, "--names", "a", "--depth", "1", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    unravelled = interpretation_from_obj(payload["interpretation"])
    assert classify_forest(unravelled, {"a"}) == RootedForest({"d"})
    assert payload["reachable_only"] is False


def test_modelcheck_and_match(files, capsys):
    kb, model, query = files
    assert run(["modelcheck", kb, model]) == 0
    capsys.readouterr()
    assert run(["match", model, query("A(?x), r(?x,?y)"), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["matches"] == [{"?x": "d", "?y": "e"}]
    assert run(["match", model, query("C(?x)")]) == 1


def test_input_error_exit_code(files, capsys, tmp_path):
    kb, model, query = files
    assert run(["sat", str(tmp_path / "missing.dl")]) == 2
    broken = tmp_path / "broken.dl"
    broken.write_text("A(", encoding="utf-8")
    assert run(["sat", str(broken)]) == 2
    assert run(["entails", kb]) == 2  # missing argument


def test_byte_identical_invocations_across_threads(files, capsys):
    kb, _, query = files
    q = query("A(?x), B(?x)")
    outputs = set()
    for threads in ("1", "4"):
        code = run(["--threads", threads, "entails", kb, q, "--json", "--countermodel"])
        assert code == 1
        outputs.add(capsys.readouterr().out)
    assert len(outputs) == 1
