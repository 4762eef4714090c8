import json

import jsonschema
import pytest

from smalldoubling.cli import main

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "config", "counts", "violations", "ok"],
    "properties": {
        "schema_version": {"const": 1},
        "config": {"type": "object"},
        "counts": {"type": "object", "required": ["examined", "hypothesis", "violations"]},
        "violations": {"type": "array"},
        "ok": {"type": "boolean"},
        "runtime_ms": {"type": ["number", "null"]},
    },
}

ANALYZE_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "set", "doubling", "vsds", "witness", "rectify", "bias"],
    "properties": {
        "witness": {"type": "object", "required": ["best", "witnesses", "hypothesis_holds"]},
    },
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze(capsys):
    code, out, _ = run(capsys, "analyze", "12:0,1,5")
    assert code == 0
    d = json.loads(out)
    jsonschema.validate(d, ANALYZE_SCHEMA)
    assert d["doubling"]["size"] == 3 and d["doubling"]["doubling"] == 6
    assert "Singular" in [w["variant"] for w in d["witness"]["witnesses"]]
    assert d["vsds"]["witness"]["vsds"] is False

    code, out, _ = run(capsys, "analyze", "--set", "0,3,6,9", "-n", "12")
    d = json.loads(out)
    assert d["witness"]["best"]["variant"] == "DenseCoset" and d["witness"]["best"]["subgroup_order"] == 4

    code, out, _ = run(capsys, "analyze", "130000:129999,0,1,10")
    d = json.loads(out)
    assert code == 0 and d["doubling"]["doubling"] == 9 and d["witness"]["best"]["variant"] == "None"


def test_parse_errors_exit_2(capsys):
    code, _, err = run(capsys, "analyze", "12:0,13")
    assert code == 2 and "column" in err
    code, _, err = run(capsys, "analyze", "--group", "10", "12:0,1")
    assert code == 2
    with pytest.raises(SystemExit) as e:
        main(["analyze", "12:0", "--coeff", "1.5"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["lemmas", "--suite", "bogus"])
    assert e.value.code == 2
    code, _, err = run(capsys, "analyze", "12:0", "--const-c", "1", "--const-c0", "1")
    assert code == 2


def test_sweep_and_lemmas(capsys):
    code, out, _ = run(capsys, "sweep", "--n-max", "10", "--mode", "main")
    assert code == 0
    jsonschema.validate(json.loads(out), REPORT_SCHEMA)
    code, out, _ = run(capsys, "sweep", "--n-max", "8", "--const-c", "1")
    assert code == 1 and json.loads(out)["violations"]
    code, _, err = run(capsys, "sweep", "--n-max", "40")
    assert code == 2 and "bound" in err
    code, out, _ = run(capsys, "lemmas", "--suite", "triple", "--n-max", "30")
    assert code == 0
    jsonschema.validate(json.loads(out), REPORT_SCHEMA)


def test_lemmas_report_violations(capsys):
    code, out, _ = run(capsys, "lemmas", "--suite", "mantel", "--n-max", "10")
    assert code == 1 and json.loads(out)["violations"]


def test_byte_identical(capsys):
    argv = ["lemmas", "--suite", "kneser", "--n-max", "6", "--trials", "300", "--seed", "4", "--no-timing"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    _, a, _ = run(capsys, "analyze", "30:0,1,4,9")
    _, b, _ = run(capsys, "analyze", "30:0,1,4,9")
    assert a == b


def test_phi_scan(capsys, tmp_path):
    code, out, _ = run(capsys, "phi-scan", "--from", "92400", "--to", "200475")
    d = json.loads(out)
    assert code == 0 and d["ok"] and d["checked"] == 108075
    target = tmp_path / "phi.csv"
    code, _, _ = run(capsys, "phi-scan", "--from", "92399", "--to", "92401", "--format", "csv", "--out", str(target))
    lines = target.read_text().splitlines()
    assert code == 1
    assert lines[0] == "n,phi_num,phi_den,ok"
    assert lines[1] == "92400,23,11550,false"


def test_bias_rectify_extremal(capsys):
    code, out, _ = run(capsys, "bias", "100:0,1,2,3,4,5,6,7,8,9", "--min-index", "50")
    d = json.loads(out)
    assert code == 0 and d["witness"]["coverage"] == [1, 1]
    code, out, _ = run(capsys, "rectify", "4:0,1,2")
    assert json.loads(out)["rectifiable"] is False
    code, out, _ = run(capsys, "extremal", "-n", "11", "--k", "4", "--format", "csv")
    assert out.splitlines()[1] == '11,4,7,"11:0,1,2,3"'
    code, out, _ = run(capsys, "extremal", "-n", "8", "--format", "text")
    assert code == 0 and "min_doubling" in out
