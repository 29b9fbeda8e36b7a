import json
import subprocess
import sys
from pathlib import Path

import pytest

from deginf.cli import main
from deginf.serialize import degree_from_json, degree_to_json, polytope_from_json, polytope_to_json

FIX = Path(__file__).resolve().parents[1] / "fixtures"
POLYGON = str(FIX / "figure1_polytope.json")
ITER = str(FIX / "iterated_filtration.json")
N2 = str(FIX / "deterally_n2.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = json.loads(capsys.readouterr().out)
    assert {"spec_revision", "inputs_echo"} <= out.keys()
    return code, out


def test_eval_fixtures(capsys):
    code, out = run(capsys, "eval", "--degree", POLYGON, "--poly", "x*y")
    assert code == 0 and out["result"] == "5/6"
    assert run(capsys, "eval", "--degree", ITER, "--poly", "x1")[1]["result"] == "3"
    assert run(capsys, "eval", "--degree", ITER, "--poly", "x2")[1]["result"] == "2"
    assert run(capsys, "eval", "--degree", ITER, "--poly", "x1^2 - x2^3")[1]["result"] == "1"
    assert run(capsys, "eval", "--degree", POLYGON, "--poly", "x - x")[1]["result"] == "-inf"


def test_eval_errors(capsys):
    code, out = run(capsys, "eval", "--degree", ITER, "--poly", "x1^11")
    assert code == 3 and out["error"]["type"] == "BoxExceeded"
    code, out = run(capsys, "eval", "--degree", "{not json", "--poly", "x")
    assert code == 2 and out["error"]["type"] == "ParseError"
    code, out = run(capsys, "eval", "--degree", POLYGON, "--poly", "x +")
    assert code == 2


def test_output_is_byte_deterministic(capsys):
    outs = []
    for _ in range(2):
        main(["intersect", "--polygon", POLYGON])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_unknown_flag_is_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eval", "--bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["nosuchcommand"])
    assert exc.value.code == 2


def test_intersect_fixtures(capsys):
    code, out = run(capsys, "intersect", "--polygon", POLYGON)
    assert code == 0
    assert out["result"]["L"] == [["1", "3/2"], ["3/2", "1"]] and out["result"]["agree"]
    code, out = run(capsys, "intersect", "--polygon", N2)
    exp = json.loads(Path(N2).read_text())["expected_canonical_order"]
    r = out["result"]
    assert (r["normals"], r["L"], r["D"], r["I_fan"], r["det_L"]) == (
        exp["normals"], exp["L"], exp["D"], exp["I"], exp["det_L"])
    code, out = run(capsys, "intersect", "--polygon", '{"normals": [[1, 1]]}')
    assert out["result"]["I_fan"] == [["1"]]
    code, out = run(capsys, "intersect", "--polygon", '{"normals": [[1, 0]]}')
    assert code == 2


def test_nef_fixture_cases(capsys):
    fx = json.loads(Path(N2).read_text())
    for case in fx["nef_cases"]:
        inp = json.dumps({"normals": fx["normals"], "m": case["m"]})
        code, out = run(capsys, "nef", "--input", inp)
        r = out["result"]
        assert code == 0
        assert (r["nef"], r["ample"], r["intersections"]) == (case["nef"], case["ample"], case["intersections"])
        if "witness_0" in case:
            assert r["witnesses"][0] == case["witness_0"]


def test_other_commands(capsys):
    code, out = run(capsys, "facets", "--polytope", POLYGON)
    assert code == 0 and {"normal": [2, 3], "c": "6"} in out["result"]["facets"]
    code, out = run(capsys, "subdegree", "--input", POLYGON)
    assert [p["weight"] for p in out["result"]["minimal"]["parts"]] == [["1/3", "1/2"], ["1/2", "1/3"]]
    code, out = run(capsys, "extract", "--degree", POLYGON, "--poly", "x + y^2", "--part", "1")
    assert out["result"]["value"] == "2/3" and out["result"]["converged"]  # part (1/2, 1/3)
    code, out = run(capsys, "divisor", "--degree", POLYGON)
    assert out["result"]["e"] == 6 and out["result"]["components_at_infinity"] == 2
    gen = '{"kind":"generated","domain":{"n":1,"mode":"POLYNOMIAL"},"generators":[{"poly":"x","weight":1},{"poly":"x^2","weight":1}]}'
    code, out = run(capsys, "normalize", "--degree", gen, "--poly", "x", "--m-cap", "4")
    assert (out["result"]["value"], out["result"]["converged"], out["result"]["e"]) == ("1/2", True, 2)
    w11 = '{"kind":"weighted","domain":{"n":2,"mode":"POLYNOMIAL"},"weight":["1","1"]}'
    w12 = '{"kind":"weighted","domain":{"n":2,"mode":"POLYNOMIAL"},"weight":["1","2"]}'
    assert run(capsys, "linking", "--degree", w11, "--pole", w12)[1]["result"]["value"] == "2"
    assert run(capsys, "linking", "--degree", w11, "--pole", w11, "--map", "[[2,0],[0,1]]")[1]["result"]["value"] == "2"
    code, out = run(capsys, "linking", "--degree", w11, "--pole", w11, "--map", "[[1,1],[1,1]]")
    assert code == 2 and out["error"]["type"] == "NotDominant"
    code, out = run(capsys, "semigroup", "--polytope", POLYGON, "--d-max", "4")
    assert out["result"]["saturated"] is True
    code, out = run(capsys, "ample", "--polygon", POLYGON)
    assert out["result"]["ample"] is True


def test_conjecture_command_is_deterministic(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("DEGINF_SEED", raising=False)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["conjecture", "--n", "3", "--k-max", "5", "--bound", "9", "--trials", "200", "--seed", "42"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())["result"]
    assert report["trials"] == 200 and report["config"]["seed"] == 42


def test_env_seed_overrides(capsys, monkeypatch):
    monkeypatch.setenv("DEGINF_SEED", "7")
    code, out = run(capsys, "conjecture", "--trials", "5", "--seed", "42")
    assert out["inputs_echo"]["seed"] == 7 and out["result"]["config"]["seed"] == 7


def test_suite_and_mutant(capsys):
    small = ["--polytopes2", "5", "--polytopes3", "2", "--polygons", "10", "--nef", "10"]
    code, out = run(capsys, "suite", *small)
    assert code == 0 and out["result"]["all_passed"]
    code, out = run(capsys, "suite", *small, "--seed", "5")
    assert code == 0
    code, out = run(capsys, "suite", *small, "--mutate", "break-linking")
    assert code == 1
    bad = [p for p in out["result"]["properties"] if not p["passed"]]
    assert [p["name"] for p in bad] == ["linking-intersection-identity"]
    assert "normals" in bad[0]["minimized_failure"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "deginf", "eval", "--degree", POLYGON, "--poly", "y"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["result"] == "1/2"


def test_descriptor_round_trips():
    for d in [json.loads(Path(ITER).read_text()),
              {"kind": "weighted", "domain": {"n": 2, "mode": "LAURENT"}, "weight": ["1/3", "-2"]},
              {"kind": "subdegree", "domain": {"n": 2, "mode": "POLYNOMIAL"}, "parts": [["1", "2"], ["2", "1"]]}]:
        delta = degree_from_json(d)
        again = degree_from_json(degree_to_json(delta))
        assert degree_to_json(again) == degree_to_json(delta)
    P = polytope_from_json(json.loads(Path(POLYGON).read_text()))
    assert polytope_to_json(polytope_from_json(polytope_to_json(P))) == polytope_to_json(P)
