import json
import subprocess
import sys

import pytest

from pairsing.cli import classify_report, emit_fermat_table, run
from pairsing.resolution import dumps_model, node_model, parse_family


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_fermat(capsys):
    code, out, _ = call(capsys, "classify", "family", "fermat:3,2", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["pair_class"]["verdict"] == "PLT"
    assert rep["different"] == {}
    assert rep["ohsawa"]["integrable"] is True
    assert rep["adjoint_trivial"] is True
    assert rep["integrable_iff_klt"] and rep["trivial_iff_plt"] and rep["inversion"]["consistent"]


def test_different_a_surface(capsys):
    code, out, _ = call(capsys, "different", "family", "a-surface:4", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"different": {"p": "3/4"}}
    code, out, _ = call(capsys, "different", "family", "a-surface:4")
    assert out.strip() == "different  p=3/4"


def test_classify_kollar(capsys):
    code, out, _ = call(capsys, "classify", "family", "kollar", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["pair_class"]["verdict"] == "NOT_LC"
    assert rep["inversion"]["applicable"] is False


@pytest.mark.parametrize("spec", ["fermat:3,2", "fermat:3,3", "node", "kollar", "a-surface:3", "smooth"])
def test_json_round_trip(capsys, spec):
    code, out, _ = call(capsys, "classify", "family", spec, "--format", "json")
    assert code == 0
    assert json.loads(out) == classify_report(parse_family(spec))


def test_model_file_input(tmp_path, capsys):
    path = tmp_path / "node.json"
    path.write_text(dumps_model(node_model()))
    code, out, _ = call(capsys, "adjoint", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out) == {"trivial": False, "required_orders": {"E": 1}}
    code, out, _ = call(capsys, "family", "node")
    assert json.loads(out) == json.loads(path.read_text())


def test_validate(tmp_path, capsys):
    code, out, _ = call(capsys, "validate", "family", "node", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"valid": True, "violations": ["warning: *: snc-unchecked"]}
    doc = json.loads(dumps_model(node_model()))
    doc["records"][1]["rel_canonical"] = "-1/1"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = call(capsys, "validate", str(bad))
    assert code == 1
    assert "negative-relative-canonical" in out
    code, out, err = call(capsys, "classify", str(bad))
    assert code == 1 and out == "" and "negative-relative-canonical" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "/no/such/file.json"],
        ["classify", "family", "bogus:1"],
        ["classify"],
        ["frobnicate", "family", "node"],
        ["verify-numeric", "fermat:9,9", "--samples", "20000"],
        ["verify-numeric", "lemma", "--samples", "10"],
        ["verify-numeric", "lemma", "--t-grid", "a,b"],
    ],
)
def test_invalid_input(capsys, argv):
    code, out, _ = call(capsys, *argv)
    assert code == 1
    assert out == ""


def test_malformed_json(tmp_path, capsys):
    path = tmp_path / "x.json"
    path.write_text("{not json")
    assert call(capsys, "classify", str(path))[0] == 1


def test_fermat_table(capsys):
    rows = emit_fermat_table()
    assert len(rows) == 45
    assert all(r.consistent and r.klt_of_different == (r.d <= r.n - 1) for r in rows)
    by = {(r.n, r.d): r for r in rows}
    assert not any([by[3, 3].klt_of_different, by[3, 3].plt, by[3, 3].ohsawa_integrable, by[3, 3].adjoint_trivial])
    assert all([by[6, 5].klt_of_different, by[6, 5].plt, by[6, 5].ohsawa_integrable, by[6, 5].adjoint_trivial])
    code, out, _ = call(capsys, "family", "table", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 45
    with pytest.raises(ValueError):
        emit_fermat_table(range(2, 8))


def test_table_disagreement_exits_3(monkeypatch, capsys):
    import pairsing.cli as cli

    monkeypatch.setattr(cli, "is_trivial", lambda m: True)
    code, out, _ = call(capsys, "family", "table")
    assert code == 3
    assert "NO" in out


def test_verify_numeric(tmp_path, capsys, monkeypatch):
    csv_path = tmp_path / "shells.csv"
    code, out, _ = call(capsys, "verify-numeric", "lemma", "--samples", "100000", "--format", "json", "--out", str(csv_path))
    assert code == 0
    rep = json.loads(out)
    assert {"estimate", "std_error", "samples", "seed", "t", "trend"} <= set(rep)
    assert rep["trend"] == "CONVERGENT" and rep["seed"] == 0 and rep["t"] == -20.0
    assert csv_path.read_text().splitlines()[0] == "t,value"
    monkeypatch.setenv("PAIRSING_SEED", "11")
    code, out, _ = call(capsys, "verify-numeric", "fermat:2,1", "--samples", "20000", "--format", "json")
    assert json.loads(out)["seed"] == 11
    code, out, _ = call(capsys, "verify-numeric", "fermat:2,1", "--samples", "20000", "--seed", "4", "--format", "json")
    assert json.loads(out)["seed"] == 4
    monkeypatch.setenv("PAIRSING_SEED", "abc")
    assert call(capsys, "verify-numeric", "fermat:2,1", "--samples", "20000")[0] == 1


def test_verify_numeric_other_targets(capsys):
    code, out, _ = call(capsys, "verify-numeric", "extension", "--samples", "100000", "--format", "json")
    assert code == 0 and json.loads(out)["trend"] == "CONVERGENT"
    code, out, _ = call(capsys, "verify-numeric", "tube:2,1", "--samples", "20000", "--format", "json")
    assert code == 0 and len(json.loads(out)["estimates"]) == 8


def test_numeric_failure_exit_2(capsys, monkeypatch):
    import pairsing.numeric as numeric

    def broken(*a, **k):
        rep = real(*a, **k)
        return rep.__class__(**{**rep.__dict__, "fit_ok": False, "message": "forced"})

    real = numeric.limit_convergence_check
    monkeypatch.setattr(numeric, "limit_convergence_check", broken)
    code, out, err = call(capsys, "verify-numeric", "lemma", "--samples", "20000")
    assert code == 2 and out == "" and "forced" in err


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "pairsing.cli", "different", "family", "node", "--format", "json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"different": {"p1": "1/1", "p2": "1/1"}}
