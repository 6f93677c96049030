"""Directional replication checklist over an analyzed run."""

from __future__ import annotations

import logging
from collections.abc import Callable
from pathlib import Path

import numpy as np
import pandas as pd

from pyswbnet.const import (
    CALIBRATION_FILE,
    REPLICATION_FILE,
    TRAJECTORIES_FILE,
    Action,
    Condition,
    Verdict,
)
from pyswbnet.exceptions import SwbNetError, UndefinedInput
from pyswbnet.models import FindingVerdict, RunManifest
from pyswbnet.stats import logistic_fit, permutation_test
from pyswbnet.util import make_rng

from ._analyze import analyze, condition_values, network_means, write_table
from ._simulate import read_manifest

_LOGGER = logging.getLogger(__name__)

REQUIRED_ALPHA = 0.05
INTERACTION_ALPHA = 0.01
INTERACTION_TERMS = (
    "intercept",
    "decider_C",
    "homophilic",
    "decider_C:homophilic",
    "visible",
    "visible:homophilic",
    "visible:decider_C",
)
NULL_EFFECT_OUTCOMES = (
    "cooperation_rate",
    "mean_degree",
    "mean_q1",
    "mean_q2",
    "mean_wealth",
)
REPLICATION_COLUMNS = (
    "finding",
    "required",
    "verdict",
    "visible",
    "invisible",
    "effect",
    "p_value",
    "detail",
)


def _verdict(passed: bool) -> Verdict:
    return Verdict.PASS if passed else Verdict.FAIL


async def load_trajectories(run_directory: Path, jobs: int = 1) -> pd.DataFrame:
    """Read trajectories.csv, analyzing the run first when it is missing."""
    path = run_directory / TRAJECTORIES_FILE
    if not path.exists():
        _LOGGER.info("No %s in %s, analyzing first", TRAJECTORIES_FILE, run_directory)
        return (await analyze(run_directory, jobs)).trajectories
    return pd.read_csv(path, dtype={"louvain_seed": str, "network_id": str})


class _Checklist:
    """Builds verdicts from per-network means."""

    def __init__(self, means: pd.DataFrame, manifest: RunManifest) -> None:
        self.means = means
        self.config = manifest.config

    def contrast(
        self,
        finding: str,
        outcome: str,
        direction: Callable[[float], bool],
        *,
        require_significance: bool,
    ) -> FindingVerdict:
        """Compare the condition means of an outcome in the expected direction."""
        visible, invisible = condition_values(self.means, outcome)
        try:
            result = permutation_test(
                visible,
                invisible,
                self.config.permutation_iterations,
                make_rng(self.config.seed, "permutation", outcome),
            )
        except UndefinedInput as exc:
            return FindingVerdict(
                finding=finding, required=True, verdict=Verdict.FAIL, detail=str(exc)
            )
        passed = direction(result.difference) and (
            not require_significance or result.p_value < REQUIRED_ALPHA
        )
        return FindingVerdict(
            finding=finding,
            required=True,
            verdict=_verdict(passed),
            visible=float(visible.mean()),
            invisible=float(invisible.mean()),
            effect=result.difference,
            p_value=result.p_value,
        )

    def null_effect(self, outcome: str) -> FindingVerdict:
        """Check a condition difference stays within the calibrated input gap."""
        visible, invisible = condition_values(self.means, outcome)
        rates = self.config.calibration.coop_rate
        gap = abs(rates[Condition.VISIBLE] - rates[Condition.INVISIBLE])
        relative_gap = gap / max(np.mean(list(rates.values())), 1e-12)
        if visible.size < 2 or invisible.size < 2:
            return FindingVerdict(
                finding=f"null_effect_{outcome}",
                required=False,
                verdict=Verdict.FAIL,
                detail="needs at least 2 networks per condition",
            )
        difference = float(visible.mean() - invisible.mean())
        error = float(
            np.sqrt(
                visible.var(ddof=1) / visible.size
                + invisible.var(ddof=1) / invisible.size
            )
        )
        pooled = float(np.mean(np.concatenate([visible, invisible])))
        allowed = relative_gap * abs(pooled) + 2 * error
        return FindingVerdict(
            finding=f"null_effect_{outcome}",
            required=False,
            verdict=_verdict(abs(difference) < allowed),
            visible=float(visible.mean()),
            invisible=float(invisible.mean()),
            effect=difference,
            detail=f"allowed |difference| < {allowed:.6g}",
        )


def interaction_design(calibration: pd.DataFrame) -> tuple[np.ndarray, np.ndarray]:
    """Expand tie-decision counts into (outcome, design) for the interaction model."""
    outcomes: list[np.ndarray] = []
    rows: list[np.ndarray] = []
    for cell in calibration.itertuples(index=False):
        visible = float(cell.condition == Condition.VISIBLE)
        decider_c = float(cell.decider_action == Action.COOPERATE)
        homophilic = float(cell.decider_action == cell.partner_action)
        covariates = np.array(
            [
                1.0,
                decider_c,
                homophilic,
                decider_c * homophilic,
                visible,
                visible * homophilic,
                visible * decider_c,
            ]
        )
        connected = int(cell.connected)
        decisions = int(cell.decisions)
        outcomes.append(
            np.concatenate([np.ones(connected), np.zeros(decisions - connected)])
        )
        rows.append(np.tile(covariates, (decisions, 1)))
    if not rows:
        raise UndefinedInput("No tie decisions were logged")
    return np.concatenate(outcomes), np.vstack(rows)


def _interaction_verdict(calibration: pd.DataFrame) -> FindingVerdict:
    finding = "homophily_interaction_negative"
    try:
        outcome, design = interaction_design(calibration)
        fit = logistic_fit(outcome, design, INTERACTION_TERMS)
    except SwbNetError as exc:
        return FindingVerdict(
            finding=finding, required=True, verdict=Verdict.FAIL, detail=str(exc)
        )
    coefficient = fit.coefficient("visible:homophilic")
    p_value = fit.p_value("visible:homophilic")
    return FindingVerdict(
        finding=finding,
        required=True,
        verdict=_verdict(coefficient < 0 and p_value < INTERACTION_ALPHA),
        effect=coefficient,
        p_value=p_value,
        detail=f"standard error {fit.standard_error('visible:homophilic'):.6g}",
    )


def _calibration_verdict(calibration: pd.DataFrame) -> FindingVerdict:
    outside = calibration.loc[~calibration["within"].astype(bool)]
    detail = ", ".join(
        f"{row.condition} {row.decider_action}->{row.partner_action}"
        for row in outside.itertuples(index=False)
    )
    return FindingVerdict(
        finding="calibration_within_ci",
        required=False,
        verdict=_verdict(outside.empty and not calibration.empty),
        effect=float(len(calibration) - len(outside)),
        detail=f"outside: {detail}" if detail else f"{len(calibration)} cells inside",
    )


def _to_frame(verdicts: list[FindingVerdict]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "finding": verdict.finding,
                "required": verdict.required,
                "verdict": str(verdict.verdict),
                "visible": verdict.visible,
                "invisible": verdict.invisible,
                "effect": verdict.effect,
                "p_value": verdict.p_value,
                "detail": verdict.detail,
            }
            for verdict in verdicts
        ],
        columns=list(REPLICATION_COLUMNS),
    )


async def replicate(run_directory: Path, jobs: int = 1) -> list[FindingVerdict]:
    """Evaluate the directional findings and write replication.csv."""
    manifest = read_manifest(run_directory)
    if manifest.conditions != set(Condition):
        raise UndefinedInput(
            "Replication needs both conditions, run has "
            + ", ".join(sorted(manifest.conditions))
        )
    trajectories = await load_trajectories(run_directory, jobs)
    calibration = pd.read_csv(run_directory / CALIBRATION_FILE)
    checklist = _Checklist(network_means(trajectories), manifest)

    verdicts = [
        checklist.contrast(
            "transitivity_lower_visible",
            "transitivity",
            lambda difference: difference < 0,
            require_significance=True,
        ),
        checklist.contrast(
            "communities_higher_visible",
            "community_count",
            lambda difference: difference > 0,
            require_significance=True,
        ),
        checklist.contrast(
            "centrality_gap_smaller_visible",
            "centrality_gap",
            lambda difference: difference < 0,
            require_significance=False,
        ),
        checklist.contrast(
            "cooperator_triangles_lower_visible",
            "cooperator_triangle_fraction",
            lambda difference: difference < 0,
            require_significance=False,
        ),
        _interaction_verdict(calibration),
        *(checklist.null_effect(outcome) for outcome in NULL_EFFECT_OUTCOMES),
        _calibration_verdict(calibration),
    ]

    write_table(_to_frame(verdicts), run_directory / REPLICATION_FILE)
    for verdict in verdicts:
        _LOGGER.info(
            "%s %s%s (effect %s, p %s)",
            verdict.verdict,
            verdict.finding,
            "" if verdict.required else " [informational]",
            verdict.effect,
            verdict.p_value,
        )
    return verdicts
