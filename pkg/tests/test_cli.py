import json

import pytest

from hnlie.cli import run
from hnlie.exprparse import parse_scalar


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_family(capsys):
    code, out, err = invoke(capsys, "classify", "--family", "g4_8")
    assert code == 0 and not err
    assert "J1: W24" in out and "J3: W3" in out


def test_classify_json_schema_and_round_trip(capsys):
    code, out, _ = invoke(
        capsys, "classify", "--family", "g4_5",
        "--param", "a1=1", "--param", "a2=-3", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "classify"
    assert set(doc["meta"]) >= {"version", "seed", "samples"}
    assert doc["inputs"]["family"] == "g4_5"
    assert doc["payload"]["labels"] == {"J1": "W4", "J2": "W23", "J3": "W23"}
    assert json.loads(json.dumps(doc)) == doc
    # scalars are exact strings, parseable by the expression grammar
    for vec in doc["payload"]["lee_forms"].values():
        for text in vec:
            parse_scalar(text)


def test_curvature_file_input(tmp_path, capsys):
    path = tmp_path / "abelian.alg"
    path.write_text('name = "abelian"\n')
    code, out, _ = invoke(capsys, "curvature", "--file", str(path), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["payload"]["riemann"] == {}
    assert doc["payload"]["tau"] == "0"
    assert doc["inputs"]["name"] == "abelian"


def test_curvature_file_with_params(tmp_path, capsys):
    path = tmp_path / "fam.alg"
    path.write_text(
        'name = "g4.5 instance"\n'
        "param a1 = 1/2\n"
        "param a2 = -1/3\n"
        "bracket [e1,e4] = e1\n"
        "bracket [e2,e4] = a1*e2\n"
        "bracket [e3,e4] = a2*e3\n"
    )
    code, out, _ = invoke(capsys, "curvature", "--file", str(path), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    # hand-derived: for this diagonal family tau = 2(1 + a1 + a2 + a1 a2 + a1^2 + a2^2)
    assert parse_scalar(doc["payload"]["tau"]) == parse_scalar("49/18")


def test_quadratic_parameter_on_cli(capsys):
    code, out, _ = invoke(
        capsys, "curvature", "--family", "g4_11",
        "--param", "q=sqrt(33)/22", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["payload"]["tau"] == "0"


def test_usage_errors_exit_one(capsys, tmp_path):
    assert invoke(capsys, "classify")[0] == 1
    assert invoke(capsys, "classify", "--family", "g4_99")[0] == 1
    assert invoke(capsys, "classify", "--family", "g4_2", "--param", "m=0")[0] == 1
    assert invoke(capsys, "classify", "--family", "g4_2")[0] == 1
    assert invoke(capsys, "classify", "--family", "g4_1", "--param", "oops")[0] == 1
    assert invoke(capsys, "curvature", "--file", str(tmp_path / "missing.alg"))[0] == 1
    bad = tmp_path / "bad.alg"
    bad.write_text("bracket [e1,e9] = e1\n")
    code, _, err = invoke(capsys, "classify", "--file", str(bad))
    assert code == 1 and "line 1" in err


def test_non_lie_algebra_rejected(capsys, tmp_path):
    path = tmp_path / "njacobi.alg"
    path.write_text('bracket [e1,e2] = e3\nbracket [e1,e3] = e1\n')
    code, _, err = invoke(capsys, "classify", "--file", str(path))
    assert code == 1 and "not a Lie algebra" in err


def test_verify_components(capsys):
    code, out, _ = invoke(capsys, "verify", "components", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["payload"]["summary"]["mismatches"] == 0
    assert doc["payload"]["summary"]["annotations"] == 12


def test_verify_table2_deterministic(capsys):
    code1, out1, _ = invoke(
        capsys, "verify", "table2", "--samples", "2", "--seed", "3", "--format", "json"
    )
    code2, out2, _ = invoke(
        capsys, "verify", "table2", "--samples", "2", "--seed", "3", "--format", "json"
    )
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["meta"]["seed"] == 3 and doc["meta"]["samples"] == 2
    assert doc["payload"]["summary"]["mismatches"] == 0
    rows = {r["row"] for r in doc["payload"]["rows"]}
    assert "g4_5:r6" in rows


def test_verify_theorem5_smoke(capsys):
    code, out, _ = invoke(
        capsys, "verify", "theorem5", "--samples", "1", "--seed", "1", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["payload"]["summary"]["disagreements"] == 0
    items = {c["item"] for c in doc["payload"]["checks"]}
    assert items == set(range(1, 20))


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = invoke(
        capsys, "classify", "--family", "g4_1", "--format", "json",
        "--output", str(target),
    )
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["payload"]["labels"]["J1"] == "W24"
