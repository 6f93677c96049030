"""Test the command line."""

from pathlib import Path

import pytest

from pyswbnet.cli import build_parser, main
from pyswbnet.const import MANIFEST_FILE, REPLICATION_FILE, ExitCode

from .conftest import fixture_path


def _args(command: str, config: str, out: Path, *extra: str) -> list[str]:
    return [
        command,
        "--config",
        str(fixture_path("config", config)),
        "--out",
        str(out),
        *extra,
    ]


def test_simulate_and_analyze(tmp_path: Path) -> None:
    """A small run simulates and analyzes successfully."""
    out = tmp_path / "run"
    assert main(_args("simulate", "run_small.toml", out, "--replicates", "2")) == (
        ExitCode.SUCCESS
    )
    assert len(list((out / "logs").iterdir())) == 4
    assert main(_args("analyze", "run_small.toml", out, "--jobs", "2")) == (
        ExitCode.SUCCESS
    )
    assert (out / "summary.csv").exists()


def test_single_condition(tmp_path: Path) -> None:
    """--condition restricts the simulated conditions."""
    out = tmp_path / "run"
    argv = _args("simulate", "run_small.toml", out, "--condition", "invisible")
    assert main(argv) == ExitCode.SUCCESS
    assert sorted(path.name for path in (out / "logs").iterdir()) == [
        "invisible-000.jsonl",
        "invisible-001.jsonl",
        "invisible-002.jsonl",
    ]
    assert main(_args("replicate", "run_small.toml", out)) == ExitCode.INPUT_ERROR


def test_seed_override(tmp_path: Path) -> None:
    """--seed replaces the configured master seed."""
    out = tmp_path / "run"
    assert main(_args("simulate", "run_small.toml", out, "--seed", "5")) == 0
    assert '"seed": 5,' in (out / MANIFEST_FILE).read_text(encoding="utf-8")


def test_invalid_config(tmp_path: Path) -> None:
    """Unknown config keys exit with an input error."""
    argv = _args("simulate", "run_unknown_key.toml", tmp_path / "run")
    assert main(argv) == ExitCode.INPUT_ERROR


def test_failed_replication(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    """A run without condition differences fails the checklist."""
    out = tmp_path / "null"
    assert main(_args("simulate", "run_null.toml", out)) == ExitCode.SUCCESS
    assert main(_args("replicate", "run_null.toml", out)) == ExitCode.VERDICT_FAILURE
    assert "FAIL  transitivity_lower_visible" in capsys.readouterr().out
    assert (out / REPLICATION_FILE).exists()


def test_unknown_mediator(tmp_path: Path) -> None:
    """An unknown mediator column is an input error."""
    out = tmp_path / "null"
    assert main(_args("simulate", "run_null.toml", out)) == ExitCode.SUCCESS
    argv = _args("mediate", "run_null.toml", out, "--mediator", "popularity")
    assert main(argv) == ExitCode.INPUT_ERROR


def test_missing_run_directory(tmp_path: Path) -> None:
    """Analyzing a directory without a run is an I/O error."""
    argv = _args("analyze", "run_small.toml", tmp_path / "missing")
    assert main(argv) == ExitCode.IO_ERROR


def test_parser_requires_command() -> None:
    """A subcommand is mandatory."""
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
