from __future__ import annotations

import csv
import json

import pytest

from qeccforge.cli import GOLDEN_MISMATCH, INFEASIBLE, INPUT_ERROR, OK, VERIFY_FAILED, fmt_num, main
from qeccforge.examples import _data


@pytest.fixture
def files(tmp_path):
    out = {}
    for name in ("hamming743.txt", "c633.txt", "c422.txt", "cyclic482.txt"):
        p = tmp_path / name
        p.write_text(_data(name))
        out[name.split(".")[0]] = p
    return out


def test_fmt_num():
    assert fmt_num(0.1) == "0.1"
    assert fmt_num(1 / 3) == "0.333333333333"


def test_construct_verify_certify(files, tmp_path):
    code = tmp_path / "steane.json"
    assert main(["construct", "--code", str(files["hamming743"]), "--dx", "3", "--dz", "3", "--out", str(code)]) == OK
    obj = json.loads(code.read_text())
    assert len(obj["states"]) == 2
    rep = tmp_path / "rep.json"
    assert main(["verify", "--code", str(code), "--out", str(rep)]) == OK
    assert json.loads(rep.read_text())["passed"] is True
    cert = tmp_path / "cert.json"
    assert main(["certify", "--code", str(code), "--out", str(cert)]) == OK
    assert json.loads(cert.read_text())["distance"] == 3


def test_verify_failure_exit_code(files, tmp_path):
    code = tmp_path / "steane.json"
    main(["construct", "--code", str(files["hamming743"]), "--dx", "3", "--dz", "3", "--out", str(code)])
    obj = json.loads(code.read_text())
    obj["states"][0]["support"] = obj["states"][0]["support"][1:]
    if "amplitudes" in obj["states"][0]:
        obj["states"][0]["amplitudes"] = obj["states"][0]["amplitudes"][1:]
    for key in ("amp_sq",):
        if obj["states"][0].get(key):
            obj["states"][0][key] = obj["states"][0][key][1:]
    code.write_text(json.dumps(obj))
    assert main(["verify", "--code", str(code), "--out", str(tmp_path / "r.json")]) == VERIFY_FAILED


def test_construct_trivial_kernel(files, tmp_path):
    assert main(["construct", "--code", str(files["c633"]), "--dx", "3", "--dz", "3", "--out", str(tmp_path / "x")]) == INFEASIBLE


def test_construct_recursive(files, tmp_path):
    out = tmp_path / "cyc.json"
    rc = main(["construct", "--code", str(files["cyclic482"]), "--dx", "2", "--dz", "2", "--states", "max", "--out", str(out)])
    assert rc == OK
    assert len(json.loads(out.read_text())["states"]) == 4


def test_input_errors(files, tmp_path):
    assert main(["construct", "--code", str(tmp_path / "missing.txt"), "--dx", "1", "--dz", "1"]) == INPUT_ERROR
    assert main(["construct", "--code", str(files["hamming743"]), "--dx", "3", "--dz", "3", "--states", "one"]) == INPUT_ERROR
    assert main(["construct", "--code", str(files["c633"]), "--dx", "3", "--dz", "2", "--strict", "--recursive"]) == INPUT_ERROR
    assert main(["examples", "nope"]) == INPUT_ERROR
    assert main(["random-code", "--q", "2", "--n", "2", "--m", "9", "--seed", "0"]) == INPUT_ERROR


def test_amatrix(files, tmp_path):
    out = tmp_path / "a.csv"
    assert main(["amatrix", "--code", str(files["hamming743"]), "--dz", "3", "--out", str(out)]) == OK
    rows = list(csv.reader(out.open()))
    assert rows[0][0] == "row" and len(rows[0]) == 17
    side = json.loads(out.with_suffix(".json").read_text())
    assert side["kernel_dim"] == 1 and side["backend"] == "exact"


def test_groundspace(capsys, tmp_path):
    assert main(["groundspace", "enum", "--s", "1", "--n", "2"]) == OK
    assert capsys.readouterr().out.splitlines() == ["-1 -1", "-1 1", "1 1"]
    assert main(["groundspace", "dim", "--s", "2", "--n", "3", "--oracle"]) == OK
    obj = json.loads(capsys.readouterr().out)
    assert obj["kernel_dimension"] == 67 and obj["oracle"]["components"] == 67
    assert main(["groundspace", "reduce", "--string", "2 0 -2"]) == OK
    assert json.loads(capsys.readouterr().out)["k"] == 0
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert main(["groundspace", "bounds", "--construct", "gv", "--s-range", "1..5", "--out", str(p)]) == OK
    assert a.read_bytes() == b.read_bytes()


def test_groundspace_embed(files, tmp_path):
    out = tmp_path / "e.json"
    assert main(["groundspace", "embed", "--code", str(files["hamming743"]), "--dx", "3", "--dz", "3", "--out", str(out)]) == OK
    assert json.loads(out.read_text())["provenance"]["ground_states"] is True


def test_aqecc_random(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert main(["aqecc", "--random", "2,6,56", "--trials", "2", "--seed", "3", "--out", str(p)]) == OK
    assert a.read_text() == b.read_text()
    assert main(["aqecc"]) == INPUT_ERROR


def test_perminv(tmp_path):
    out = tmp_path / "p.json"
    assert main(["perminv", "--n", "10", "--d", "2", "--expand", "--out", str(out)]) == OK
    obj = json.loads(out.read_text())
    assert obj["dicke_kl"] and obj["computational_kl"]
    assert main(["perminv", "--n", "9", "--d", "2"]) == INFEASIBLE


def test_examples(tmp_path):
    emitted = tmp_path / "steane.json"
    assert main(["examples", "steane", "--emit-code", str(emitted), "--out", str(tmp_path / "r.json")]) == OK
    assert json.loads((tmp_path / "r.json").read_text())["ok"] is True
    assert emitted.exists()
    assert main(["verify", "--code", str(emitted), "--out", str(tmp_path / "v.json")]) == OK


def test_golden_mismatch_exit_code(monkeypatch):
    from qeccforge import examples

    real = examples.golden()
    real["steane"]["kernel_dim"] = 2
    monkeypatch.setattr(examples, "golden", lambda: real)
    assert main(["examples", "steane"]) == GOLDEN_MISMATCH


def test_random_code_output(capsys):
    assert main(["random-code", "--q", "2", "--n", "4", "--m", "16", "--seed", "1"]) == OK
    lines = [ln for ln in capsys.readouterr().out.splitlines() if ln and not ln.startswith("#")]
    assert lines[0].startswith("alphabet")
    assert len(lines) == 17
