import json
import subprocess
import sys

import pytest

from bielliptic_seshadri.certificates import Certificate
from bielliptic_seshadri.cli import run
from bielliptic_seshadri.oracle import OracleVerdict
from bielliptic_seshadri.surd import BoundValue


def run_json(argv):
    code, out = run(argv + ["--format", "json"])
    return code, json.loads(out)


def test_bound_type1_global():
    code, out = run(["bound", "--type", "1", "--bundle", "3,2", "--global"])
    assert code == 0
    assert out.splitlines()[1].startswith("Exact 2")
    assert "witness: class (1,0)" in out


def test_hr_table_r2():
    code, out = run(["hr-table", "--r", "2", "--mu", "8"])
    assert code == 0
    assert "| 1,-1,2,-2,3" in out
    assert "3 |" not in out


def test_oracle_no_violations_and_violations():
    argv = ["oracle", "--type", "2", "--bundle", "1,1", "--point", "very-general",
            "--claimed", "4/3", "--window", "8,8,6"]
    code, out = run(argv)
    assert code == 0 and "no violations" in out
    code, out = run(argv + ["--no-xu"])
    assert code == 1 and "violations" in out


def test_usage_errors():
    assert run(["frobnicate"])[0] == 2
    assert run(["bound", "--type", "1", "--bundle", "3"])[0] == 2
    code, out = run(["bound", "--type", "1", "--bundle", "0,2", "--global"])
    assert code == 2 and "not ample" in out
    assert run(["multipoint", "--type", "1", "--bundle", "1,1", "--r", "1"])[0] == 2
    assert run(["bound", "--type", "5", "--bundle", "1,1", "--point", "singular:2"])[0] == 2


def test_hr_verify_exit_codes():
    assert run(["hr-verify", "--type", "2", "--bundle", "1,1", "--r", "2"])[0] == 0
    code, out = run(["hr-verify", "--type", "2", "--bundle", "1,1", "--r", "2", "--mu", "9"])
    assert code == 1 and "FAIL" in out


@pytest.mark.parametrize(
    "command,theorem",
    [
        ("bound", "type 1 exact value"),
        ("multipoint", "Harbourne-Roe"),
        ("hr-table", "Harbourne-Roe"),
        ("hr-verify", "Harbourne-Roe"),
        ("oracle", "Xu-type lemma"),
        ("replay", "4/3"),
        ("serrano-table", "Serrano"),
    ],
)
def test_help_names_theorem(command, theorem):
    code, out = run([command, "--help"])
    assert code == 0
    assert theorem in " ".join(out.split())


def test_json_round_trip_certificates():
    code, record = run_json(["multipoint", "--type", "2", "--bundle", "1,1", "--r", "2"])
    assert code == 0 and record["schema_version"] == 1
    for d in record["certificates"]:
        assert Certificate.from_dict(d).to_dict() == d
    assert record["certificates"][0]["value"]["radicand"] == "15/16"


def test_json_round_trip_verdict():
    code, record = run_json(["oracle", "--type", "2", "--bundle", "1,1", "--point", "very-general",
                             "--claimed", "4/3", "--window", "8,8,6", "--no-xu"])
    assert code == 1
    assert OracleVerdict.from_dict(record).to_dict() == record


def test_text_and_json_agree():
    argv = ["bound", "--type", "2", "--bundle", "2,3", "--point", "very-general"]
    _, text = run(argv)
    _, record = run_json(argv)
    text_values = [BoundValue.parse(line.split()[1]) for line in text.splitlines()[1:]
                   if line.split()[0] in ("Exact", "Lower", "Upper")]
    json_values = [BoundValue.from_dict(c["value"]) for c in record["certificates"]]
    assert text_values == json_values


def test_serrano_table_outputs():
    code, out = run(["serrano-table"])
    rows = out.splitlines()[1:]
    assert code == 0 and len(rows) == 7
    assert "2,3,6" in rows[6] and "A/6, B" in rows[6]
    assert rows[1].rstrip().endswith("(0,2)")
    _, record = run_json(["serrano-table"])
    assert len(record["types"]) == 7


def test_replay_command():
    code, record = run_json(["replay", "--case", "type2-m5"])
    assert code == 0 and record["inconsistent"]


def test_verbose_prints_trace():
    _, out = run(["bound", "--type", "4", "--bundle", "1,1", "--global", "-v"])
    assert "sqrt(2-2/m)" in out


def test_module_entry_point_and_no_color(monkeypatch):
    env = {"NO_COLOR": "1", "PATH": ""}
    proc = subprocess.run(
        [sys.executable, "-m", "bielliptic_seshadri", "hr-verify", "--type", "1",
         "--bundle", "1,1", "--r", "3"],
        capture_output=True, text=True, env=env,
    )
    assert proc.returncode == 0
    assert "\033[" not in proc.stdout and "PASS" in proc.stdout
