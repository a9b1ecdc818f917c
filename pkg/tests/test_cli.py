import csv
import io
import json
import subprocess
import sys

import pytest

from mirrorkit import cli


def run(argv, capsys):
    code = cli.main(argv)
    return code, capsys.readouterr().out


def test_verify_superpotential_text(capsys):
    code, out = run(["verify", "superpotential", "--n", "1..3"], capsys)
    assert code == 0
    assert "15 passed, 0 failed" in out


def test_verify_json_to_file(tmp_path):
    path = tmp_path / "out.json"
    assert cli.main(["verify", "superpotential", "--n", "2", "--format", "json", "-o", str(path), "--no-timestamp"]) == 0
    data = json.loads(path.read_text())
    assert "timestamp" not in data
    pull = [r for r in data["records"] if r["check"] == "superpotential.pullback"]
    assert pull[0]["details"]["residual"] == "0"
    s = data["summary"]
    assert s["total"] == len(data["records"]) == s["pass"] + s["fail"] + s["skip"]


@pytest.mark.parametrize("argv", [
    ["verify", "hms", "--n", "3..2"],
    ["verify", "hms", "--i", "x..y"],
    ["dims", "--j", "5..1"],
    ["verify", "discs", "--trials", "0"],
])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_hms_grid(capsys):
    code, out = run(["verify", "hms", "--n", "2", "--i", "-4..4", "--j", "-4..4"], capsys)
    assert code == 0 and "0 failed" in out


def test_dims_and_csv(capsys):
    code, out = run(["dims", "--n", "2", "--i", "0", "--j", "1"], capsys)
    assert code == 0 and "a_side 4, b_side 4" in out
    code, out = run(["dims", "--n", "2..3", "--i", "-1..1", "--j", "-1..1", "--format", "csv"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "i", "j", "a_side", "b_side", "match"]
    assert len(rows) == 1 + 2 * 9 and all(r[-1] == "true" for r in rows[1:])


def test_psi(capsys):
    code, out = run(["psi", "--n", "2", "--j", "4"], capsys)
    assert out.strip() == "(0,1) (1,1) (2,2) degrees {3,2,4}"


def test_branch(capsys):
    _, out = run(["branch", "--n", "2", "--m", "1", "--degx", "3"], capsys)
    assert out.startswith("deg B = 6")
    _, out = run(["branch", "--n", "2", "--m", "2", "--degx", "3", "--format", "json"], capsys)
    assert json.loads(out)["deg_B"] == "15/2"


def test_jet_jacobian(capsys):
    code, out = run(["jet-jacobian", "--d", "3"], capsys)
    assert code == 0 and "signed permutation yes" in out
    assert "lambda_1 -> slot 2, sign -" in out


def test_discs_suite_seeded(capsys):
    code, out = run(["verify", "discs", "--n", "2", "--trials", "100", "--seed", "0"], capsys)
    assert code == 0


def test_report_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert cli.main(["report", "--n", "1..2", "--trials", "20", "-o", str(p), "--no-timestamp"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert cli.main(["report", "--n", "1", "--trials", "5", "-o", str(a)]) == 0
    assert "timestamp" in json.loads(a.read_text())


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 3, "trials": 10, "n": "1..2"}))
    _, out = run(["verify", "discs", "--config", str(cfg), "--trials", "4", "--format", "json", "--no-timestamp"], capsys)
    echo = json.loads(out)["config"]
    assert (echo["seed"], echo["trials"], echo["n"]) == (3, 4, "1..2")


def test_bad_config(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "hms", "--config", str(cfg)])
    assert exc.value.code == 2


def test_failure_sets_exit_code(monkeypatch, capsys):
    def broken(cfg, report):
        report.check("hms.fake", {"n": 1}, False)
        report.add("hms.other", {"n": 1}, "skip")

    monkeypatch.setitem(cli.RUNNERS, "hms", broken)
    code, out = run(["verify", "hms", "--format", "csv"], capsys)
    assert code == 1
    assert out.splitlines()[1] == 'hms.fake,"{""n"": 1}",fail'


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "mirrorkit", "psi", "--n", "1", "--j", "0"],
        capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "(0,0) (1,0) degrees {0,-1}"
