from __future__ import annotations

import json

import pytest

from quintic_bcov import checks, cli


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_genus_two_json(capsys):
    code, out, _ = run(["solve", "--genus", "2", "--order", "14"], capsys)
    assert code == 0
    data = json.loads(out)
    g2 = data["reports"][2]
    assert g2["genus"] == 2
    assert {"d": 1, "value": "575/48"} in g2["invariants"]
    assert g2["ambiguity"] == ["-11771/7200", "487/300", "113/7200", "-1/240"]
    assert g2["residual_margin"] == 10
    assert data["config"]["order"] == 14 and data["config"]["genus"] == 2


def test_solve_genus_one_and_zero(capsys):
    code, out, _ = run(["solve", "--genus", "1", "--order", "12"], capsys)
    reports = json.loads(out)["reports"]
    assert reports[1]["ambiguity"] == ["-107/60", "-1/12"]
    assert reports[0]["invariants"][0] == {"d": 1, "value": "2875"}


def test_table_rows(capsys):
    code, out, _ = run(["table", "--genus", "2", "--order", "12"], capsys)
    rows = out.splitlines()
    assert code == 0 and rows[0] == "g,d,numerator,denominator"
    for row in ("1,1,2875,12", "2,1,575,48", "2,0,-5,144", "0,2,4876875,8"):
        assert row in rows


def test_output_is_deterministic(tmp_path, capsys):
    # the output path is part of the embedded config, so reuse it
    out = tmp_path / "a.json"
    assert cli.main(["solve", "--genus", "2", "--order", "12", "--out", str(out)]) == 0
    first = out.read_bytes()
    assert cli.main(["solve", "--genus", "2", "--order", "12", "--out", str(out)]) == 0
    assert out.read_bytes() == first


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# run settings\norder = 12\ngenus = 1\nformat = csv\ngauge = c1b=0;c2=1,2\n")
    code, out, _ = run(["solve", "--config", str(cfg), "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["config"]["order"] == 12 and data["config"]["gauge"] == "c1b=0;c2=1,2"
    assert len(data["reports"]) == 2


def test_bad_config_and_gauge(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = red\n")
    assert run(["solve", "--config", str(cfg)], capsys)[0] == 2
    code, _, err = run(["solve", "--gauge", "c3=1,2,3,4,5"], capsys)
    assert code == 2 and "degree" in err


def test_missing_initial_data(capsys):
    code, _, err = run(["solve", "--genus", "3", "--order", "8"], capsys)
    assert code == 2 and "N_{3,1}" in err


def test_not_polynomial_exit(monkeypatch, capsys):
    from quintic_bcov.errors import NotPolynomial

    def boom(cfg):
        raise NotPolynomial("mismatch", 7)

    monkeypatch.setattr(cli, "_solve", boom)
    code, _, err = run(["solve"], capsys)
    assert code == 2 and "q-order 7" in err


def test_verify_mirror(capsys):
    code, out, _ = run(["verify", "--suite", "mirror", "--order", "30"], capsys)
    data = json.loads(out)
    assert code == 0 and data["passed"]
    names = {c["name"] for c in data["checks"]}
    assert {"P03_equals_one", "relation_A2", "relation_B4", "D_closure_E1"} <= names


@pytest.mark.parametrize("suite", ["oracle", "hae", "gauge"])
def test_verify_suites(suite, capsys):
    code, out, _ = run(["verify", "--suite", suite, "--order", "12", "--format", "csv"], capsys)
    assert code == 0
    assert out.startswith("check,passed,detail")
    assert ",False," not in out


def test_verify_failure_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(checks, "run_suite", lambda name, cfg: [{"name": "x", "passed": False, "detail": ""}])
    code, out, _ = run(["verify", "--suite", "mirror"], capsys)
    assert code == 1 and json.loads(out)["passed"] is False
