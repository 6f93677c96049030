"""Batch simulation of both conditions into a run directory."""

from __future__ import annotations

import json
import logging
from datetime import UTC, datetime
from pathlib import Path

from mashumaro.exceptions import MissingField

from pyswbnet.const import LOG_DIRECTORY, LOG_SUFFIX, MANIFEST_FILE, Condition
from pyswbnet.exceptions import InvalidConfig
from pyswbnet.game import run_session
from pyswbnet.models import (
    AgentPolicy,
    RunConfig,
    RunManifest,
    SessionConfig,
    SessionEntry,
)

from ._eventlog import write_log
from ._parallel import run_jobs

_LOGGER = logging.getLogger(__name__)


def network_id(condition: Condition, replicate: int) -> str:
    """Return the identifier of a simulated network."""
    return f"{condition}-{replicate:03d}"


def _simulate_one(
    session: SessionConfig,
    policy: AgentPolicy,
    identifier: str,
    replicate: int,
    run_directory: Path,
) -> SessionEntry:
    log = run_session(session, policy, identifier)
    log_file = f"{LOG_DIRECTORY}/{identifier}{LOG_SUFFIX}"
    write_log(log, run_directory / log_file)
    return SessionEntry(
        condition=session.condition,
        replicate=replicate,
        network_id=identifier,
        seed=session.seed,
        log_file=log_file,
    )


def read_manifest(run_directory: Path) -> RunManifest:
    """Load the manifest of a run directory."""
    path = run_directory / MANIFEST_FILE
    try:
        return RunManifest.from_json(path.read_text(encoding="utf-8"))
    except (MissingField, ValueError, TypeError) as exc:
        raise InvalidConfig(str(path), f"unreadable manifest: {exc}") from exc


async def simulate(config: RunConfig, jobs: int = 1) -> Path:
    """Simulate every (condition, replicate) session and write the run directory."""
    run_directory = config.output_directory
    (run_directory / LOG_DIRECTORY).mkdir(parents=True, exist_ok=True)
    policy = config.agent_policy()

    arguments = [
        (
            config.session_config(condition, replicate),
            policy,
            network_id(condition, replicate),
            replicate,
            run_directory,
        )
        for condition in config.conditions
        for replicate in range(config.replicates_per_condition)
    ]
    entries = await run_jobs(_simulate_one, arguments, jobs)

    manifest = RunManifest(
        created_at=datetime.now(UTC), config=config, sessions=entries
    )
    (run_directory / MANIFEST_FILE).write_text(
        json.dumps(manifest.to_dict(), indent=2) + "\n", encoding="utf-8"
    )
    _LOGGER.info("Simulated %s sessions into %s", len(entries), run_directory)
    return run_directory
