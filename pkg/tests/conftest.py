"""Setting up pytest fixtures for the tests."""

import json
import tomllib
from pathlib import Path
from typing import Any

import numpy as np
import pytest

from pyswbnet.const import Condition
from pyswbnet.harness import run_config_from_mapping
from pyswbnet.models import RunConfig, SessionConfig

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(kind: str, file_name: str) -> Path:
    """Return the path of a fixture file."""
    return FIXTURES / kind / file_name


def load_fixture(kind: str, file_name: str) -> dict[str, Any]:
    """Load a JSON or TOML fixture."""
    path = fixture_path(kind, file_name)
    if path.suffix == ".toml":
        with path.open("rb") as f:
            return tomllib.load(f)
    with path.open(encoding="utf-8") as f:
        return json.load(f)


def load_text_fixture(kind: str, file_name: str) -> str:
    """Load a fixture as text."""
    return fixture_path(kind, file_name).read_text(encoding="utf-8")


@pytest.fixture(name="rng")
def fixture_rng() -> np.random.Generator:
    """Seeded generator."""
    return np.random.default_rng(12345)


@pytest.fixture(name="session_config")
def fixture_session_config() -> SessionConfig:
    """Small visible-condition session."""
    return SessionConfig(n_players=6, rounds=3, condition=Condition.VISIBLE, seed=99)


@pytest.fixture(name="small_run_config")
def fixture_small_run_config(tmp_path: Path) -> RunConfig:
    """Small calibrated batch writing into a temporary directory."""
    return run_config_from_mapping(
        {
            **load_fixture("config", "run_small.toml"),
            "output_directory": str(tmp_path / "run"),
        }
    )


@pytest.fixture(name="null_run_config")
def fixture_null_run_config(tmp_path: Path) -> RunConfig:
    """Batch with identical behaviour in both conditions."""
    return run_config_from_mapping(
        {
            **load_fixture("config", "run_null.toml"),
            "output_directory": str(tmp_path / "null"),
        }
    )
