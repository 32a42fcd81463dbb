"""
Tests for the command line entry point
"""
import json
import os
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from .. import cli
from ..core import suites


def test_tensor_passes(capsys):
    assert cli.run(["tensor"]) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "[PASS] tens-pr-decomp" in out
    assert out.strip().endswith("6 passed, 0 failed, 0 skipped")


def test_help_exits_cleanly(capsys):
    assert cli.run(["--help"]) == cli.EXIT_OK
    assert "usage: voa" in capsys.readouterr().out


def test_unknown_command_is_a_usage_error():
    assert cli.run(["frobnicate"]) == cli.EXIT_USAGE


def test_invalid_parameters_are_usage_errors(capsys):
    assert cli.run(["classify", "--ell", "0"]) == cli.EXIT_USAGE
    assert "ell must be at least 1" in capsys.readouterr().err
    assert cli.run(["tensor", "--lhs", "1,x", "--rhs", "1"]) == cli.EXIT_USAGE
    assert cli.run(["chars", "--max-weight", "1/3"]) == cli.EXIT_USAGE


def test_failing_check_sets_exit_status(monkeypatch):
    def failing(runner, params):
        runner.check("always fails", "demo", lambda: False)

    monkeypatch.setitem(suites.SUITES, "tensor", failing)
    assert cli.run(["tensor"]) == cli.EXIT_FAILED


def test_json_report_is_deterministic(tmp_path):
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    assert cli.run(["classify", "--ell", "3", "--bound", "2", "--json", str(first)]) == cli.EXIT_OK
    assert cli.run(["classify", "--ell", "3", "--bound", "2", "--json", str(second)]) == cli.EXIT_OK
    assert first.read_bytes() == second.read_bytes()

    report = json.loads(first.read_text(encoding="utf-8"))
    assert report["command"] == "classify"
    assert report["parameters"]["ell"] == 3
    assert {check["status"] for check in report["checks"]} == {"pass"}
    assert all(check["elapsed_ms"] == 0 for check in report["checks"])


def test_json_report_field_names(tmp_path):
    path = tmp_path / "tensor.json"
    assert cli.run(["tensor", "--json", str(path)]) == cli.EXIT_OK
    check = json.loads(path.read_text(encoding="utf-8"))["checks"][0]
    assert list(check) == ["name", "paper_anchor", "status", "details", "elapsed_ms"]
    assert check["paper_anchor"] == "tens-pr-decomp"


def test_timings_are_recorded_on_request(tmp_path):
    path = tmp_path / "timed.json"
    assert cli.run(["tensor", "--timings", "--json", str(path)]) == cli.EXIT_OK
    report = json.loads(path.read_text(encoding="utf-8"))
    assert all(isinstance(check["elapsed_ms"], int) for check in report["checks"])


def test_defaults_come_from_settings(monkeypatch):
    monkeypatch.setattr(cli.settings, "default_ell", 3)
    args = cli.build_parser().parse_args(["delta3"])
    assert cli.params_from_args(args).ell == 3


INTERPRETER_DIR = str(Path(sys.executable).parent)


@pytest.mark.skipif(shutil.which("python", path=INTERPRETER_DIR) is None, reason="scripts/voa runs `python`")
def test_wrapper_writes_relative_json_in_callers_directory(tmp_path):
    script = Path(__file__).resolve().parents[2] / "scripts" / "voa"
    env = {**os.environ, "PATH": INTERPRETER_DIR + os.pathsep + os.environ.get("PATH", "")}
    completed = subprocess.run(
        ["bash", str(script), "tensor", "--json", "out.json"],
        cwd=tmp_path, env=env, capture_output=True, text=True,
    )
    assert completed.returncode == cli.EXIT_OK, completed.stderr
    report = json.loads((tmp_path / "out.json").read_text(encoding="utf-8"))
    assert report["command"] == "tensor"
