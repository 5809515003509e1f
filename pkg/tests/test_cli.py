import io
import json

import pytest

from antialg import cli


def run(*argv, env=None):
    out = io.StringIO()
    code = cli.run(list(argv), out)
    return code, out.getvalue()


def test_check_axioms_asl2():
    code, text = run("check-axioms", "--algebra", "asl2")
    assert code == 0
    assert "5/5 identity families pass" in text


def test_broken_spec_exit_1(fixtures):
    code, text = run("check-axioms", "--spec", str(fixtures / "broken.alg.json"))
    assert code == 1
    assert "CacT at (eps, eps, a): 1/2*a" in text


def test_spec_file_roundtrip(fixtures):
    assert run("check-axioms", "--spec", str(fixtures / "asl2.alg.json"))[0] == 0


def test_cohomology_json():
    code, text = run("cohomology", "--algebra", "asl2", "--module", "trivial", "--max-degree", "2", "--json")
    assert code == 0
    assert json.loads(text) == {"1": {"even": 0, "odd": 0}, "2": {"even": 0, "odd": 0}}


@pytest.mark.parametrize("argv", [
    ["derivations", "--algebra", "asl2"],
    ["superize", "--algebra", "ah1:1"],
    ["associator", "--algebra", "ak1:2"],
    ["rep", "frep", "--window", "1"],
    ["rep", "casimir", "--window", "1"],
    ["geo", "verify-ak1", "--window", "2"],
    ["geo", "invariants", "--degree", "0"],
    ["cocycle", "gamma", "--window", "2"],
    ["check-axioms", "--algebra", "ak1", "--window", "3"],
    ["check-axioms", "--algebra", "osp12"],
])
def test_verbs_pass(argv):
    code, text = run(*argv)
    assert code == 0, text


def test_derivations_json():
    code, text = run("derivations", "--algebra", "asl2", "--json")
    d = json.loads(text)
    assert d["dims"] == [3, 2] and d["osp12_match"] and d["super_jacobi"]


def test_rep_check_file(tmp_path):
    rep = {"algebra": "asl2", "dims": [1, 0], "chi": {"eps": [[0, 0, "1/2"]]}}
    p = tmp_path / "r.json"
    p.write_text(json.dumps(rep))
    code, text = run("rep", "check", "--algebra", "asl2", "--rep", str(p))
    assert code == 1 and "eqRep at (a, b)" in text


@pytest.mark.parametrize("argv", [
    ["check-axioms", "--algebra", "sl3"],
    ["check-axioms"],
    ["cocycle", "gamma", "--window", "0"],
    ["rep", "frep", "--window", "1/2"],
    ["cohomology", "--algebra", "ak1"],
    ["rep", "check", "--algebra", "asl2"],
    ["frobnicate"],
])
def test_input_errors(argv):
    assert run(*argv)[0] == 2


def test_malformed_spec(tmp_path):
    p = tmp_path / "bad.alg.json"
    p.write_text('{"name": "x", "kind": "antialgebra", "even_basis": ["e"], "products": [{"left": "e", "right": "z"}]}')
    assert run("check-axioms", "--spec", str(p))[0] == 2


def test_conventions_file(tmp_path, monkeypatch):
    p = tmp_path / "conv.json"
    p.write_text(json.dumps({"cohomology": "printed"}))
    monkeypatch.setenv("ANTIALG_CONVENTIONS", str(p))
    assert cli.load_conventions()["cohomology"] == "printed"
    # printed coboundary does not square to zero on the adjoint module
    assert run("cohomology", "--algebra", "asl2", "--module", "adjoint", "--max-degree", "1")[0] == 1
    p.write_text(json.dumps({"colour": "blue"}))
    assert run("check-axioms", "--algebra", "asl2")[0] == 2


def test_output_is_deterministic():
    a = run("superize", "--algebra", "asl2", "--json")[1]
    b = run("superize", "--algebra", "asl2", "--json")[1]
    assert a == b
