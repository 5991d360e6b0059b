from __future__ import annotations

import json
import subprocess
import sys

import pytest

from krcert.cli import main


def test_pipeline_json_to_file_and_replay(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["pipeline", "remarks", "--report", "json", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["pipeline"] == "remarks" and data["verdict"] == "verified"
    assert main(["replay", str(out)]) == 0
    assert "ok     rem-1" in capsys.readouterr().out


def test_replay_detects_a_tampered_certificate(tmp_path):
    out = tmp_path / "report.json"
    main(["pipeline", "remarks", "--report", "json", "--out", str(out)])
    data = json.loads(out.read_text())
    cert = data["claims"][0]["detail"]["certificates"][0]
    cert["value"]["numerator"] = "mu^2"
    out.write_text(json.dumps(data))
    assert main(["replay", str(out)]) == 1


def test_text_report_on_stdout(capsys):
    assert main(["pipeline", "danielewski"]) == 0
    text = capsys.readouterr().out
    assert "dan-8" in text and text.rstrip().endswith("verdict: verified")


def test_negative_controls_exit_refuted(capsys):
    assert main(["pipeline", "remarks", "--negative-controls"]) == 1


def test_inconclusive_exit_code(capsys):
    assert main(["pipeline", "kr-cylinder", "--ansatz-degree", "1"]) == 2


@pytest.mark.parametrize("argv", [
    [],
    ["pipeline", "unknown"],
    ["pipeline", "remarks", "--kernel-degree", "-2"],
    ["pipeline", "remarks", "--report", "yaml"],
    ["check-file", "/nonexistent/file.chk"],
    ["replay", "/nonexistent/report.json"],
])
def test_usage_and_io_errors_exit_3(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 3


def test_malformed_check_file_exits_3(tmp_path, capsys):
    f = tmp_path / "bad.chk"
    f.write_text("ring A = Q(i)[x]\ncheck nonsense A\n")
    assert main(["check-file", str(f)]) == 3
    assert "line 2" in capsys.readouterr().err


def test_check_file_verdicts(tmp_path, capsys):
    f = tmp_path / "ok.chk"
    f.write_text("ring A = Q(i)[x, y] / (x*y - 1)\ncheck unit-ideal A: x\n")
    assert main(["check-file", str(f), "--report", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["claims"][0]["status"] == "verified"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "krcert", "pipeline", "remarks", "--report", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["verdict"] == "verified"
