"""Mediation of the condition effect through a per-network metric."""

from __future__ import annotations

import json
import logging
from pathlib import Path

from pyswbnet.const import Condition
from pyswbnet.exceptions import UnknownColumn
from pyswbnet.models import MediationReport
from pyswbnet.stats import mediate
from pyswbnet.util import make_rng

from ._analyze import METRIC_COLUMNS, network_means
from ._replicate import load_trajectories
from ._simulate import read_manifest

_LOGGER = logging.getLogger(__name__)

DEFAULT_MEDIATOR = "cooperator_centrality"
DEFAULT_OUTCOMES = ("community_count", "transitivity")
MEDIATION_COLUMNS = (*METRIC_COLUMNS, "centrality_gap")


def mediation_file(mediator: str, outcome: str) -> str:
    """Return the report file name of a mediator/outcome pair."""
    return f"mediation-{mediator}-{outcome}.json"


async def mediate_cmd(
    run_directory: Path,
    mediator: str = DEFAULT_MEDIATOR,
    outcome: str = DEFAULT_OUTCOMES[0],
    bootstrap: int | None = None,
    jobs: int = 1,
) -> MediationReport:
    """Mediate visible-vs-invisible through `mediator` onto `outcome`.

    Both columns are averaged over rounds per network first.
    """
    for column in (mediator, outcome):
        if column not in MEDIATION_COLUMNS:
            raise UnknownColumn(column, MEDIATION_COLUMNS)
    manifest = read_manifest(run_directory)
    config = manifest.config
    means = network_means(await load_trajectories(run_directory, jobs))
    usable = means.dropna(subset=[mediator, outcome])
    if len(usable) < len(means):
        _LOGGER.warning(
            "Dropped %s networks without a %s or %s value",
            len(means) - len(usable),
            mediator,
            outcome,
        )

    result = mediate(
        (usable["condition"] == Condition.VISIBLE).to_numpy(dtype=float),
        usable[mediator].to_numpy(dtype=float),
        usable[outcome].to_numpy(dtype=float),
        bootstrap if bootstrap is not None else config.mediation_bootstrap,
        make_rng(config.seed, "mediation", mediator, outcome),
    )
    report = MediationReport(
        mediator=mediator, outcome=outcome, seed=config.seed, result=result
    )
    path = run_directory / mediation_file(mediator, outcome)
    path.write_text(json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8")
    _LOGGER.info(
        "Mediation %s -> %s: proportion %s, CI [%s, %s], p %s",
        mediator,
        outcome,
        result.proportion,
        result.ci_low,
        result.ci_high,
        result.p_value,
    )
    return report
