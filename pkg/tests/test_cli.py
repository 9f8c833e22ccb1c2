import json
import subprocess
import sys

import pytest

from moddouble.cli import run


def test_verify_pentagon(capsys):
    assert run(["verify", "--suite", "pentagon", "--degree", "6", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    recs = doc["suites"][0]["records"]
    assert all(r["residual"] == "0" for r in recs if r["expect"] == "zero")
    assert any(r["expect"] == "nonzero" and not r["passed"] for r in recs)


def test_central_charge_one(capsys):
    assert run(["central-charge", "--b", "1", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["central_charge"] == "25"


def test_eval_psi(capsys):
    assert run(["eval-psi", "--b", "0.7071+0.7071i", "--p", "0", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["agree"] is True
    assert float(doc["relative_difference"]) < 1e-8
    assert abs(complex(doc["value"].replace("i", "j")) - 1) < 1e-4


def test_eval_psi_single_branch(capsys):
    # real b: |q| = 1 so only the integral applies
    assert run(["eval-psi", "--b", "1", "--p", "0.5", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["branch"] == "integral"


@pytest.mark.parametrize("argv", [
    ["eval-psi", "--b", "1+", "--p", "0"],
    ["central-charge", "--b", "zz"],
    ["central-charge", "--b", "0"],
    ["verify", "--suite", "pentagon", "--degree", "1"],
    ["verify", "--suite", "yang-baxter", "--degree", "40"],
    ["verify", "--suite", "forms", "--degree", "-2"],
    ["verify", "--suite", "no-such-suite"],
    ["oracle-check", "--dim", "1"],
    ["frobnicate"],
    [],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2
    assert "error" in capsys.readouterr().err


def test_report_written_atomically(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert run(["verify", "--suite", "casimir", "--report", str(path)]) == 0
    doc = json.loads(path.read_text())
    assert doc["ok"] and doc["suites"][0]["suite"] == "casimir"
    assert [p.name for p in tmp_path.iterdir()] == ["r.json"]


def test_unwritable_report(tmp_path, capsys):
    assert run(["verify", "--suite", "uq", "--report", str(tmp_path / "missing" / "r.json")]) == 2


def test_output_is_deterministic(capsys):
    run(["verify", "--suite", "psi", "--format", "json"])
    first = capsys.readouterr().out
    run(["verify", "--suite", "psi", "--format", "json"])
    assert capsys.readouterr().out == first


def test_conventions_report(capsys):
    assert run(["conventions-report", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["coproduct"]["selected"]["convention"] == "E"
    assert doc["coproduct"]["selected"]["k"] == -1
    assert doc["casimir"]["stated_expression_central"] is False
    assert doc["cartan_exponent"]["printed"]["twist_k"] is None


def test_oracle_check(capsys):
    assert run(["oracle-check", "--dim", "4", "--trials", "10"]) == 0
    assert "oracle[4]:homomorphism" in capsys.readouterr().out


def test_failure_exit_code(monkeypatch, capsys):
    from moddouble import suites
    from moddouble.report import IdentityRecord, SuiteReport

    def broken(_N=None):
        return SuiteReport("broken", [IdentityRecord("x", "x = 0", False, "1")])

    monkeypatch.setitem(suites.SUITES, "uq", broken)
    assert run(["verify", "--suite", "uq"]) == 1


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "moddouble", "central-charge", "--b", "1j"],
                         capture_output=True, text=True, timeout=60)
    assert out.returncode == 0
    assert out.stdout.startswith("central charge 1 ")


def test_verify_all_jobs_match(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["verify-all", "--report", str(a)]) == 0
    assert run(["verify-all", "--jobs", "2", "--report", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
