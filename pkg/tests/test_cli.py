import io
import json
import subprocess
import sys

import pytest

from qshift.cli import main


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, [line for line in out.getvalue().splitlines() if line]


@pytest.fixture
def mu_file(tmp_path):
    path = tmp_path / "mu.json"
    path.write_text(json.dumps({"family": "glN", "N": 2, "entries": [["1", "0"], ["0", "2"]]}))
    return str(path)


def test_commute_fail_with_witness():
    code, lines = run(["commute", "--a", "E[1,2]", "--b", "E[2,1]"])
    assert code == 1
    assert json.loads(lines[0]) == {"check": "commute", "status": "fail", "witness": "E[1,1] − E[2,2]", "ms": 0}


def test_commute_pass():
    code, lines = run(["commute", "--a", "E[1,1] + E[2,2]", "--b", "E[1,2]"])
    assert code == 0 and json.loads(lines[0])["witness"] is None


def test_apply_dmu(mu_file):
    code, lines = run(["apply-dmu", "--mu", mu_file, "--element", "E[1,1]E[2,2] - E[1,2]E[2,1]"])
    assert code == 0 and lines == ["2*E[1,1] + E[2,2] + 2"]
    code, lines = run(["apply-dmu", "--mu", mu_file, "--element", "E[2,1]E[1,2]", "--power", "0"])
    assert lines == ["E[1,2]E[2,1] − E[1,1] + E[2,2]"]


def test_parse_errors_exit_nonzero(mu_file, tmp_path, capsys):
    assert run(["apply-dmu", "--mu", mu_file, "--element", "E[1,"])[0] != 0
    assert "unexpected input" in capsys.readouterr().err
    bad = tmp_path / "bad.json"
    bad.write_text('{"family": "glN", "N": 2, "entries": [["1", "x"], ["0", "2"]]}')
    assert run(["apply-dmu", "--mu", str(bad), "--element", "E[1,1]"])[0] != 0
    skew = tmp_path / "skew.json"
    skew.write_text(json.dumps({"family": "oN-split", "N": 3, "entries": [["1", "0", "0"], ["0", "0", "0"], ["0", "0", "1"]]}))
    assert run(["apply-dmu", "--mu", str(skew), "--element", "F[1,1]"])[0] != 0
    assert run(["apply-dmu", "--mu", str(tmp_path / "missing.json"), "--element", "E[1,1]"])[0] != 0


def test_generate(mu_file, tmp_path):
    code, lines = run(["generate", "--family", "glN", "--n", "2", "--mu", mu_file])
    data = json.loads(lines[0])
    assert code == 0 and len(data) == 3 and data[0]["label"]["kind"] == "dmu-iterate"
    out = tmp_path / "fam.json"
    assert run(["generate", "--family", "oN", "--n", "4", "--out", str(out)])[0] == 0
    assert len(json.loads(out.read_text())) == 4
    assert run(["generate", "--family", "glN", "--n", "3", "--mu", mu_file])[0] != 0


def test_check_counterexamples_o5():
    code, lines = run(["check", "--suite", "counterexamples", "--family", "oN", "--max-n", "5"])
    reports = [json.loads(l) for l in lines]
    assert code == 0 and reports and all(r["status"] == "pass" for r in reports)
    assert all(set(r) == {"check", "status", "witness", "ms"} for r in reports)


def test_check_small_theorems_suite():
    code, lines = run(["check", "--suite", "theorems", "--family", "glN", "--max-n", "2", "--trials", "20"])
    assert code == 0 and len(lines) > 5


def test_caps_flag():
    code, _ = run(["--max-degree", "2", "apply-dmu", "--mu", "/nonexistent", "--element", "E[1,1]"])
    assert code != 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qshift", "commute", "--a", "E[1,1]", "--b", "E[2,2]"], capture_output=True, text=True)
    assert res.returncode == 0 and '"status": "pass"' in res.stdout
