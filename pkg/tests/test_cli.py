import json
import subprocess
import sys

import pytest

from skat import proofsys as ps
from skat.cli import ERROR, NEGATIVE, OK, main
from skat.finalg import builtin_fig3

CLOSURE = "c(c(x) -> c(y)) = c(x) -> c(y)"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_translate(capsys):
    code, out, _ = run(capsys, "translate", "b0 |- b0")
    assert code == OK and out.strip() == "c(c(x1)) <= c(x1)"


def test_translate_eq_form(capsys):
    code, out, _ = run(capsys, "translate", "--eq", "p0 |- b0")
    assert code == OK and out.splitlines() == ["c(x0) <= c(x1)", "c(x0) + c(x1) = c(x1)"]


def test_translate_json(capsys):
    for argv in (["--json", "translate", "b1, p0 |- b0"], ["translate", "--json", "b1, p0 |- b0"]):
        code, out, _ = run(capsys, *argv)
        data = json.loads(out)
        assert code == OK and data["variables"] == {"x0": "p0", "x1": "b0", "x3": "b1"}


def test_check_eq_witness(capsys):
    code, out, _ = run(capsys, "check-eq", "--algebra", "fig3", CLOSURE)
    assert code == NEGATIVE
    assert "x=0" in out and "y=0" in out
    code, out, _ = run(capsys, "--json", "check-eq", "--algebra", "fig3", CLOSURE)
    data = json.loads(out)
    assert data["witness"] == {"x": 0, "y": 0} and (data["lhs"], data["rhs"]) == ("1", "T")


def test_check_eq_holds(capsys):
    code, out, _ = run(capsys, "check-eq", "--algebra", "fig3", "x + x = x")
    assert code == OK and out.strip() == "holds"


def test_prove(capsys):
    code, out, _ = run(capsys, "prove", "--depth", "4", "|- 1")
    assert code == OK and "RImp" in out and "I0" in out
    code, out, _ = run(capsys, "--json", "prove", "--depth", "4", "|- 1")
    pt = ps.ProofTree.from_json(json.loads(out)["proof"])
    assert ps.check_proof(pt)


def test_prove_failure_is_negative(capsys):
    code, _, _ = run(capsys, "prove", "--depth", "5", "p0 |- b0")
    assert code == NEGATIVE


def test_check_proof(capsys, tmp_path):
    pt = ps.search_proof("b0, p0 => b1, p0 |- b1")
    path = tmp_path / "proof.json"
    path.write_text(json.dumps(pt.to_json()))
    code, out, _ = run(capsys, "check-proof", str(path))
    assert code == OK and out.startswith("ok:")
    # give a leaf an extra premise
    data = pt.to_json()
    node = data
    while node["premises"]:
        node = node["premises"][0]
    node["premises"] = [dict(node)]
    code, out, _ = run(capsys, "--json", "check-proof", json.dumps(data))
    res = json.loads(out)
    assert code == NEGATIVE and not res["ok"] and len(res["path"]) >= 1


MODEL = json.dumps({"W": 2, "valuation": {"p0": [[0, 1]], "b0": []}})


def test_eval_and_valid(capsys):
    code, out, _ = run(capsys, "eval", "--model", MODEL, "p0 => b0")
    assert code == OK and out.strip() == "{(1,1)}"
    code, out, _ = run(capsys, "valid", "--model", MODEL, "p0 |- b0")
    assert code == NEGATIVE and out.strip() == "invalid"
    code, out, _ = run(capsys, "valid", "--model", MODEL, "b0 |- b0")
    assert code == OK


def test_countermodel(capsys):
    code, out, _ = run(capsys, "--json", "countermodel", "p0 |- b0")
    data = json.loads(out)
    assert code == NEGATIVE and data["found"]
    code, _, _ = run(capsys, "countermodel", "--max-w", "2", "b0 |- b0")
    assert code == OK


def test_seed_from_environment(capsys, monkeypatch):
    argv = ["--json", "countermodel", "--max-w", "2", "--budget", "50", "b0, p0, p1, p2, p3 |- b0"]
    monkeypatch.setenv("SKAT_SEED", "5")
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    monkeypatch.setenv("SKAT_SEED", "five")
    assert run(capsys, *argv)[0] == ERROR


def test_check_algebra(capsys):
    code, out, _ = run(capsys, "check-algebra", "--algebra", "fig3", "--level", "SKATStar", "--derived")
    assert code == OK and "all pass" in out
    code, _, _ = run(capsys, "check-algebra", "--algebra", "fig2", "--level", "SKAT")
    assert code == NEGATIVE


def test_check_algebra_from_json(capsys, tmp_path):
    path = tmp_path / "a.json"
    path.write_text(json.dumps(builtin_fig3().to_json()))
    code, _, _ = run(capsys, "check-algebra", "--algebra", str(path), "--level", "SKAT")
    assert code == OK


def test_mine(capsys, tmp_path):
    out_path = tmp_path / "m.json"
    code, out, _ = run(capsys, "mine", "--size", "2", "--level", "KleeneAlgebra", "--out", str(out_path))
    assert code == OK and out.startswith("1 algebra")
    assert json.loads(out_path.read_text())["count"] == 1


def test_builtin(capsys):
    code, out, _ = run(capsys, "builtin", "fig2")
    assert code == OK and out.startswith("fig2")
    code, out, _ = run(capsys, "--json", "builtin", "fig3")
    assert json.loads(out)["size"] == 3


def test_run_corpus(capsys):
    code, out, _ = run(capsys, "--json", "run-corpus")
    data = json.loads(out)
    assert code == OK and data["ok"] and len(data["entries"]) >= 20


@pytest.mark.parametrize("argv", [
    ["translate", "b0 |-"],
    ["translate", "p0 => p1"],
    ["eval", "--model", "nope.json", "b0"],
    ["check-eq", "--algebra", "fig3", "x +"],
    ["frobnicate"],
    [],
])
def test_input_errors(capsys, argv):
    assert main(argv) == ERROR


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "skat", "translate", "b0 |- b0"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "c(c(x1)) <= c(x1)"
