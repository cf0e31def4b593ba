import json
import subprocess
import sys

import jsonschema
import pytest

from harmconv.analysis import verdict_schema
from harmconv.cli import main

SCHEMA = verdict_schema()


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,code", [
    (["verify", "thm22", "--n", "1", "--a", "-0.34", "--theta", "pi"], 2),
    (["verify", "thm22", "--n", "2", "--a", "0.2", "--theta", "1.0"], 0),
    (["verify", "thm22", "--n", "3", "--a", "0.2", "--theta", "pi/2"], 0),
    (["verify", "thm24", "--a", "0.5", "--b", "-0.9"], 2),
    (["verify", "thm24", "--a", "0", "--b", "0"], 0),
    (["verify", "cor25", "--a", "0"], 0),
    (["verify", "cor25", "--a", "-0.2"], 2),
    (["verify", "remark22", "--n", "3", "--theta", "pi"], 2),
    (["verify", "example23"], 0),
])
def test_verify_exit_codes_and_schema(capsys, argv, code):
    got, out, _ = run(capsys, *argv)
    assert got == code
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert doc["pass"] == (code == 0)
    if code == 2 and argv[1] == "thm22":
        assert doc["witnesses"]


def test_verify_key_order(capsys):
    _, out, _ = run(capsys, "verify", "cor25", "--a", "0.1")
    assert list(json.loads(out))[:4] == ["statement_id", "params", "branch", "pass"]


@pytest.mark.parametrize("argv", [
    ["verify", "thm22", "--n", "1", "--a", "1.5", "--theta", "0"],
    ["verify", "thm22", "--n", "1", "--theta", "0"],
    ["verify", "thm22", "--n", "1", "--a", "0", "--theta", "tau"],
    ["verify", "nope"],
    ["frobnicate"],
    ["zeros", "--poly", "1,,2"],
    ["zeros", "--poly", "3"],
    ["render", "--a", "0", "--n", "1", "--theta", "0", "--r-max", "1.2"],
    ["render", "--a", "0", "--n", "1", "--theta", "0", "--circles", "rays:3@8"],
    ["shear", "--kernel", "monomial:n=0"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == ""
    assert err


def test_zeros(capsys):
    code, out, _ = run(capsys, "zeros", "--poly=-1.01,0.01,1")
    doc = json.loads(out)
    assert code == 0
    assert (doc["inside"], doc["on"], doc["outside"], doc["verdict"]) == (0, 1, 1, "has_outside")
    code, out, _ = run(capsys, "zeros", "--poly", "0.5,0.5,1", "--mode", "schur_cohn")
    assert json.loads(out)["determinants"] == pytest.approx([0.75, 0.5])


def test_zeros_integrity_exit(capsys):
    code, _, err = run(capsys, "zeros", "--poly=-1.01,0.01,1", "--mode", "schur_cohn")
    assert code == 3
    assert "numerical-integrity" in err


def test_shear_convolve_dilatation(capsys, monkeypatch):
    monkeypatch.setenv("HC_TRUNCATION", "16")
    code, out, _ = run(capsys, "shear", "--kernel", "moebius:b=0")
    doc = json.loads(out)
    assert code == 0 and doc["N"] == 16
    assert doc["h"][2] == [1.5, 0.0]
    code, out, _ = run(capsys, "convolve", "--left", "moebius:b=0", "--right", "moebius:b=0")
    assert json.loads(out)["h"][3] == pytest.approx([4.0, 0.0])
    code, out, _ = run(capsys, "convolve", "--left", "moebius:b=0.5",
                       "--right", "monomial:n=1,theta=pi", "--renormalize")
    assert json.loads(out)["h"][1] == pytest.approx([1.0, 0.0])
    code, out, _ = run(capsys, "dilatation", "--a", "-0.34", "--kernel",
                       "monomial:n=1,theta=pi", "--max-scan")
    doc = json.loads(out)
    assert doc["max_modulus"] > 1
    assert doc["dilatation"]["numerator"][0] == pytest.approx([-1.01, 0.0])


@pytest.mark.parametrize("value", ["abc", "4"])
def test_bad_truncation_env(capsys, monkeypatch, value):
    monkeypatch.setenv("HC_TRUNCATION", value)
    code, _, err = run(capsys, "shear", "--kernel", "moebius:b=0")
    assert code == 1 and "HC_TRUNCATION" in err


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "--n-range", "1:3", "--a-range", "0.5:0.9:3",
                       "--theta-range", "0,pi/2,pi")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 27 and doc["passed"] == 27
    code, out, _ = run(capsys, "scan", "--n-range", "1", "--a-range", "-0.34", "--theta-range", "pi")
    assert code == 2


def test_render_to_file(tmp_path, capsys):
    path = tmp_path / "fig1.svg"
    code, out, _ = run(capsys, "render", "--a", "-0.34", "--n", "1", "--theta", "pi",
                       "--circles", "10@512", "--rays", "16@256", "-o", str(path))
    assert code == 0 and out == ""
    svg = path.read_text()
    assert svg.count("<path") == 26
    code, _, _ = run(capsys, "render", "--a", "-0.34", "--n", "1", "--theta", "pi",
                     "--circles", "circles:10@512", "--rays", "rays:16@256",
                     "-o", str(tmp_path / "again.svg"))
    assert (tmp_path / "again.svg").read_text() == svg


def test_output_is_byte_deterministic(tmp_path):
    cmd = [sys.executable, "-m", "harmconv", "verify", "thm22", "--n", "4", "--a", "0.5",
           "--theta", "2.0"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == 0
    assert a.stdout == b.stdout and a.stdout
