import logging
import os
import sys

import pytest
from typer.testing import CliRunner

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from run import app, setup_logging

runner = CliRunner()


def test_plan_command_writes_artifacts(tmp_path):
    out = tmp_path / "saida"
    result = runner.invoke(app, ["plan", "--seed", "3", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert (out / "channel_plan.csv").exists()
    assert (out / "manifest.yaml").exists()


def test_explicit_channels(tmp_path):
    out = tmp_path / "saida"
    result = runner.invoke(app, ["plan", "--channels", "18:24,19:23", "-o", str(out)])
    assert result.exit_code == 0, result.output
    lines = (out / "channel_plan.csv").read_text().splitlines()
    assert len(lines) == 3
    assert lines[1].startswith("19,23")


@pytest.mark.parametrize("channels", ["foo", "19:24"])
def test_invalid_channels_exit_with_config_error(tmp_path, channels):
    result = runner.invoke(app, ["plan", "--channels", channels, "-o", str(tmp_path)])
    assert result.exit_code == 1


def test_invalid_config_file_exits_with_config_error(tmp_path):
    path = tmp_path / "ruim.yaml"
    path.write_text("detectors:\n  a:\n    efficiency: 1.5\n", encoding="utf-8")
    result = runner.invoke(app, ["plan", "-c", str(path), "-o", str(tmp_path / "saida")])
    assert result.exit_code == 1


def test_missing_config_file_exits_with_config_error(tmp_path):
    result = runner.invoke(app, ["plan", "-c", str(tmp_path / "nada.yaml")])
    assert result.exit_code == 1


def test_franson_with_inadmissible_fsr_exits_with_warnings(tmp_path):
    path = tmp_path / "fsr.yaml"
    path.write_text("franson:\n  fsr_hz: 2.0e11\n  mean_counts: 1000.0\n", encoding="utf-8")
    result = runner.invoke(app, ["franson", "-c", str(path), "-o", str(tmp_path / "saida")])
    assert result.exit_code == 2


def test_rerun_into_same_directory_is_byte_identical(tmp_path):
    out = tmp_path / "saida"
    args = ["plan", "--seed", "11", "--out", str(out)]
    assert runner.invoke(app, args).exit_code == 0
    first = {p.name: p.read_bytes() for p in out.iterdir()}
    assert runner.invoke(app, args).exit_code == 0
    second = {p.name: p.read_bytes() for p in out.iterdir()}
    assert first == second


def test_log_level_from_environment(monkeypatch):
    monkeypatch.setenv("SAGNAC_LOG_LEVEL", "debug")
    setup_logging(debug=False)
    assert logging.getLogger("sagnac").level == logging.DEBUG

    monkeypatch.setenv("SAGNAC_LOG_LEVEL", "error")
    setup_logging(debug=False)
    assert logging.getLogger("sagnac").level == logging.ERROR

    setup_logging(debug=True)
    assert logging.getLogger("sagnac").level == logging.DEBUG
