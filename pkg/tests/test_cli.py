import json
import subprocess
import sys

import pytest

from qcartan.cli import main
from qcartan.relations import builtin_presentation, format_presentation


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_normalize_golden(capsys):
    code, out, _ = run(capsys, "normalize", "y*x")
    assert code == 0
    assert out == "(q^-1) x*y\n"


def test_normalize_unit(capsys):
    code, out, _ = run(capsys, "normalize", "x*x^-1")
    assert code == 0
    assert out == "1\n"


def test_act_golden(capsys):
    code, out, _ = run(capsys, "act", "Ty", "y")
    assert code == 0
    assert out == "x\n"


def test_d_command(capsys):
    code, out, _ = run(capsys, "d", "x*y")
    assert code == 0
    assert out == "dx*y + (q) dy*x\n"


def test_iapply_and_lapply(capsys):
    code, out, _ = run(capsys, "iapply", "y", "dx*dy")
    assert code == 0
    assert out == "(-q) dx\n"
    code, out, _ = run(capsys, "lapply", "z", "z")
    assert code == 0
    assert out == "1\n"


def test_pair_command(capsys):
    code, out, _ = run(capsys, "pair", "X", "x^3")
    assert code == 0
    assert out == "3\n"
    code, out, _ = run(capsys, "pair", "Y", "y*x")
    assert code == 0
    assert out == "q^-1\n"


def test_q_specialization(capsys):
    code, out, _ = run(capsys, "normalize", "y*x", "--q", "2")
    assert code == 0
    assert out == "(1/2) x*y\n"


def test_q_rejects_zero(capsys):
    with pytest.raises(SystemExit):
        main(["normalize", "y*x", "--q", "0"])


def test_missing_rule_diagnostic(capsys):
    code, out, err = run(capsys, "normalize", "wx*dx")
    assert code == 2
    assert "missing rule" in err
    assert "wx" in err and "dx" in err


def test_parse_error_exits_nonzero(capsys):
    code, _, err = run(capsys, "normalize", "y**x")
    assert code == 2
    assert "error" in err


def test_check_identification_text(capsys):
    code, out, _ = run(capsys, "check", "identification")
    assert code == 0
    assert out.startswith("PASS identification:")
    assert out.rstrip().endswith("PASS all suites")


def test_check_json_lines(capsys):
    code, out, _ = run(capsys, "check", "d-expansion", "--max-degree", "2",
                       "--format", "json-lines")
    assert code == 0
    lines = out.strip().splitlines()
    records = [json.loads(line) for line in lines]
    assert all(r["status"] == "pass" for r in records)
    assert all(r["suite"] == "d-expansion" for r in records)
    names = [r["check"] for r in records]
    assert names == sorted(names)


def test_check_output_is_deterministic(capsys):
    _, first, _ = run(capsys, "check", "omega", "--max-degree", "2")
    _, second, _ = run(capsys, "check", "omega", "--max-degree", "2")
    assert first == second


def test_custom_table_flag(tmp_path, capsys):
    path = tmp_path / "tiny.rel"
    path.write_text("y . x -> (q^-1) x . y\n", encoding="utf-8")
    code, out, _ = run(capsys, "normalize", "y*x", "--table", str(path))
    assert code == 0
    assert out == "(q^-1) x*y\n"
    # the tiny table knows nothing about differentials
    code, _, err = run(capsys, "normalize", "x*dy", "--table", str(path))
    assert code == 2
    assert "missing rule" in err


def test_table_env_override(tmp_path, capsys, monkeypatch):
    path = tmp_path / "builtin.rel"
    path.write_text(format_presentation(builtin_presentation()), encoding="utf-8")
    monkeypatch.setenv("QCARTAN_TABLE", str(path))
    code, out, _ = run(capsys, "normalize", "y*x")
    assert code == 0
    assert out == "(q^-1) x*y\n"
    monkeypatch.setenv("QCARTAN_TABLE", str(tmp_path / "missing.rel"))
    code, _, err = run(capsys, "normalize", "y*x")
    assert code == 2


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qcartan.cli", "normalize", "y*x"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "(q^-1) x*y\n"
