import csv
import json

import pytest

from qutrit_lab.cli import cli_main


def rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_case1_row_count(tmp_path):
    out = tmp_path / "c1.csv"
    code = cli_main(["--case", "1", "--eps3", "0.1", "--dm-strength", "0.2", "--t-max", "25",
                     "--t-steps", "2501", "--out", str(out)])
    assert code == 0
    assert len(rows(out)) == 2501


def test_case2_requires_equal_eps(tmp_path, capsys):
    code = cli_main(["--case", "2", "--eps1", "0.5", "--eps2", "0.7", "--out", str(tmp_path / "x.csv")])
    assert code == 2
    assert "usage" in capsys.readouterr().err


def test_unknown_flag(capsys):
    assert cli_main(["--case", "1", "--bogus"]) == 2
    assert "usage" in capsys.readouterr().err


def test_missing_case():
    assert cli_main([]) == 2


def test_bad_number():
    assert cli_main(["--case", "1", "--eps3", "abc"]) == 2


def test_unnormalized_env():
    assert cli_main(["--case", "1", "--env", "1,1,0"]) == 2


def test_dt_scaling_in_output(tmp_path):
    out = tmp_path / "scal.csv"
    code = cli_main(["--case", "1", "--eps3", "0.5", "--dm-strength", "0.2,0.4", "--t-max", "20",
                     "--t-steps", "201", "--out", str(out)])
    assert code == 0
    data = rows(out)
    slow = {float(r["t"]): float(r["n1"]) for r in data if float(r["D"]) == 0.2}
    fast = {float(r["t"]): float(r["n1"]) for r in data if float(r["D"]) == 0.4}
    assert len(slow) == len(fast) == 201
    checked = 0
    for t, n1 in fast.items():
        if 2 * t in slow:
            assert abs(n1 - slow[2 * t]) <= 1e-9
            checked += 1
    assert checked >= 100


def test_env_flag_does_not_change_scores(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    common = ["--case", "1", "--eps3", "0.5", "--t-max", "25", "--t-steps", "51"]
    assert cli_main(common + ["--out", str(a)]) == 0
    assert cli_main(common + ["--env", "0.6,0,0.8j", "--out", str(b)]) == 0
    for ra, rb in zip(rows(a), rows(b)):
        assert abs(float(ra["n1"]) - float(rb["n1"])) <= 1e-10
        assert abs(float(ra["n2"]) - float(rb["n2"])) <= 1e-10


def test_json_and_summary(tmp_path, capsys):
    out = tmp_path / "o.json"
    code = cli_main(["--case", "1", "--eps3", "0.3", "--t-max", "25", "--t-steps", "1001",
                     "--format", "json", "--summary", "--out", str(out)])
    assert code == 0
    assert len(json.loads(out.read_text())) == 1001
    summary = json.loads(capsys.readouterr().out)
    ftb = summary["curves"][0]["free_to_bound"]
    assert ftb[0] == pytest.approx(11.107, abs=0.01)


def test_stdout_output(capsys):
    assert cli_main(["--case", "custom", "--eps1", "2", "--t-max", "1", "--t-steps", "3", "--generator", "spin1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "t,D,eps1,eps2,eps3,n1,n2,class" and len(lines) == 4


def test_auto_generator_fails_for_env_coupling():
    assert cli_main(["--case", "1", "--eps3", "0.3", "--coupling", "environment", "--t-steps", "5"]) == 1


def test_env_coupling_with_fixed_generator(tmp_path):
    out = tmp_path / "env.csv"
    assert cli_main(["--case", "1", "--eps3", "0.3", "--coupling", "environment", "--generator", "spin1",
                     "--t-steps", "21", "--out", str(out)]) == 0
    assert max(float(r["n1"]) for r in rows(out)) <= 1e-9


def test_unwritable_output(tmp_path):
    assert cli_main(["--case", "1", "--eps3", "0.3", "--t-steps", "3", "--out", str(tmp_path / "no" / "x.csv")]) == 1
