"""Per-round network metrics and condition summaries of a run."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
from scipy import stats

from pyswbnet.agents import tie_decisions
from pyswbnet.const import (
    CALIBRATION_FILE,
    PAYOUT_SUMMARY_FILE,
    SUMMARY_FILE,
    TRAJECTORIES_FILE,
    TRAJECTORY_SUMMARY_FILE,
    Action,
    Condition,
)
from pyswbnet.exceptions import UndefinedInput
from pyswbnet.metrics import (
    cooperator_triangle_fraction,
    eigenvector_centrality,
    gini,
    louvain,
    mean_centrality_by_action,
    transitivity,
)
from pyswbnet.models import RunManifest, SessionEntry
from pyswbnet.network import Network
from pyswbnet.stats import permutation_test, welch_t
from pyswbnet.util import FLOAT_FORMAT, derive_seed, make_rng

from ._eventlog import read_log
from ._parallel import run_jobs
from ._simulate import read_manifest

_LOGGER = logging.getLogger(__name__)

ID_COLUMNS = ("condition", "replicate", "network_id", "round")
METRIC_COLUMNS = (
    "cooperation_rate",
    "mean_degree",
    "mean_wealth",
    "mean_q1",
    "mean_q2",
    "community_count",
    "transitivity",
    "gini",
    "cooperator_centrality",
    "defector_centrality",
    "cooperator_triangle_fraction",
)
TRAJECTORY_COLUMNS = (*ID_COLUMNS, *METRIC_COLUMNS, "louvain_seed")
SUMMARY_OUTCOMES = (
    "cooperation_rate",
    "mean_degree",
    "mean_wealth",
    "mean_q1",
    "mean_q2",
    "community_count",
    "transitivity",
    "cooperator_centrality",
    "defector_centrality",
    "cooperator_triangle_fraction",
)
SUMMARY_COLUMNS = (
    "outcome",
    "visible_mean",
    "invisible_mean",
    "visible_n",
    "invisible_n",
    "difference",
    "permutation_p",
    "welch_t",
    "welch_p",
)
QUANTILE_OUTCOMES = (
    "cooperation_rate",
    "mean_degree",
    "mean_wealth",
    "mean_q1",
    "mean_q2",
)
MEAN_SEM_OUTCOMES = ("community_count", "transitivity")
CALIBRATION_COLUMNS = (
    "condition",
    "decider_action",
    "partner_action",
    "decisions",
    "connected",
    "frequency",
    "table_value",
    "ci_low",
    "ci_high",
    "within",
)


@dataclass(kw_only=True)
class NetworkAnalysis:
    """Everything computed from one session log."""

    rows: list[dict[str, Any]] = field(default_factory=list)
    payouts: list[dict[str, Any]] = field(default_factory=list)
    ties: Counter[tuple[str, str, str, bool]] = field(default_factory=Counter)


@dataclass(kw_only=True)
class AnalysisReport:
    """Tables written by `analyze`."""

    trajectories: pd.DataFrame
    summary: pd.DataFrame
    trajectory_summary: pd.DataFrame
    payout_summary: pd.DataFrame
    calibration: pd.DataFrame


def _safe_gini(wealth: list[int]) -> float:
    """Gini of wealth floored at zero; 0 when nobody has anything left."""
    floored = np.maximum(np.asarray(wealth, dtype=float), 0.0)
    if not floored.any():
        return 0.0
    if np.any(np.asarray(wealth) < 0):
        _LOGGER.debug("Negative wealth floored at 0 for the Gini coefficient")
    return gini(floored)


def analyze_network(
    run_directory: Path, entry: SessionEntry, louvain_base_seed: int
) -> NetworkAnalysis:
    """Compute the metrics of every round of one network.

    Round r is measured on the network the round's decisions were made on,
    i.e. the snapshot taken at the end of round r - 1.
    """
    log = read_log(run_directory / entry.log_file)
    config = log.config
    result = NetworkAnalysis()
    for round_number in range(1, config.rounds + 1):
        played_on = log.snapshot(round_number - 1)
        network = Network.from_snapshot(config.n_players, played_on)
        actions = log.actions(round_number)
        wealth = log.wealth_after(round_number)
        ratings = np.asarray(log.swb(round_number), dtype=float)
        seed = derive_seed(louvain_base_seed, "louvain", entry.network_id, round_number)
        cooperators, defectors = mean_centrality_by_action(
            eigenvector_centrality(network), actions
        )
        result.rows.append(
            {
                "condition": str(entry.condition),
                "replicate": entry.replicate,
                "network_id": entry.network_id,
                "round": round_number,
                "cooperation_rate": actions.count(Action.COOPERATE) / config.n_players,
                "mean_degree": 2 * network.edge_count / config.n_players,
                "mean_wealth": float(np.mean(wealth)),
                "mean_q1": float(ratings[:, 0].mean()),
                "mean_q2": float(ratings[:, 1].mean()),
                "community_count": louvain(network, seed).count,
                "transitivity": transitivity(network),
                "gini": _safe_gini(wealth),
                "cooperator_centrality": cooperators,
                "defector_centrality": defectors,
                "cooperator_triangle_fraction": (
                    cooperator_triangle_fraction(network, actions)
                    if config.n_players >= 3
                    else None
                ),
                "louvain_seed": str(seed),
            }
        )

    for record in log.payouts:
        result.payouts.append(
            {
                "condition": str(entry.condition),
                "network_id": entry.network_id,
                "player": record.player,
                "wealth": record.wealth,
                "usd": record.usd,
            }
        )
    for observation in tie_decisions(log.rewiring_events(), entry.condition):
        result.ties[
            (
                str(observation.condition),
                str(observation.decider_action),
                str(observation.partner_action),
                observation.connected,
            )
        ] += 1
    return result


def network_means(trajectories: pd.DataFrame) -> pd.DataFrame:
    """Average every metric over rounds, one row per network."""
    groups = ["condition", "network_id"]
    means = (
        trajectories.groupby(groups, sort=False)[list(METRIC_COLUMNS)]
        .mean()
        .reset_index()
    )
    means["centrality_gap"] = (
        trajectories.assign(
            gap=trajectories["cooperator_centrality"]
            - trajectories["defector_centrality"]
        )
        .groupby(groups, sort=False)["gap"]
        .mean()
        .to_numpy()
    )
    return means


def condition_values(
    means: pd.DataFrame, outcome: str
) -> tuple[np.ndarray, np.ndarray]:
    """Return the per-network values of an outcome for (visible, invisible)."""
    visible = means.loc[means["condition"] == Condition.VISIBLE, outcome].dropna()
    invisible = means.loc[means["condition"] == Condition.INVISIBLE, outcome].dropna()
    return visible.to_numpy(dtype=float), invisible.to_numpy(dtype=float)


def _summary(means: pd.DataFrame, manifest: RunManifest) -> pd.DataFrame:
    config = manifest.config
    rows = []
    for outcome in SUMMARY_OUTCOMES:
        visible, invisible = condition_values(means, outcome)
        row: dict[str, Any] = {
            "outcome": outcome,
            "visible_mean": visible.mean() if visible.size else None,
            "invisible_mean": invisible.mean() if invisible.size else None,
            "visible_n": visible.size,
            "invisible_n": invisible.size,
            "difference": None,
            "permutation_p": None,
            "welch_t": None,
            "welch_p": None,
        }
        if visible.size and invisible.size:
            row["difference"] = visible.mean() - invisible.mean()
        try:
            permutation = permutation_test(
                visible,
                invisible,
                config.permutation_iterations,
                make_rng(config.seed, "permutation", outcome),
            )
            row["permutation_p"] = permutation.p_value
            welch = welch_t(visible, invisible)
            row["welch_t"], row["welch_p"] = welch.t, welch.p_value
        except UndefinedInput as exc:
            _LOGGER.warning("No condition contrast for %s: %s", outcome, exc)
        rows.append(row)
    return pd.DataFrame(rows, columns=list(SUMMARY_COLUMNS))


def _trajectory_summary(trajectories: pd.DataFrame) -> pd.DataFrame:
    grouped = trajectories.groupby(["condition", "round"], sort=False)
    columns: dict[str, pd.Series] = {}
    for outcome in QUANTILE_OUTCOMES:
        series = grouped[outcome]
        columns[f"{outcome}_median"] = series.median()
        columns[f"{outcome}_q25"] = series.quantile(0.25)
        columns[f"{outcome}_q75"] = series.quantile(0.75)
        columns[f"{outcome}_min"] = series.min()
        columns[f"{outcome}_max"] = series.max()
    for outcome in MEAN_SEM_OUTCOMES:
        columns[f"{outcome}_mean"] = grouped[outcome].mean()
        columns[f"{outcome}_sem"] = grouped[outcome].sem()
    return pd.DataFrame(columns).reset_index()


def _payout_summary(payouts: pd.DataFrame) -> pd.DataFrame:
    return (
        payouts.groupby("condition", sort=False)
        .agg(
            networks=("network_id", "nunique"),
            players=("player", "size"),
            mean_points=("wealth", "mean"),
            mean_usd=("usd", "mean"),
            min_usd=("usd", "min"),
            max_usd=("usd", "max"),
            total_usd=("usd", "sum"),
        )
        .reset_index()
    )


def _calibration(ties: Counter, manifest: RunManifest) -> pd.DataFrame:
    table = manifest.config.calibration
    rows = []
    for condition in Condition:
        for decider in Action:
            for partner in Action:
                key = (str(condition), str(decider), str(partner))
                connected = ties[(*key, True)]
                decisions = connected + ties[(*key, False)]
                if decisions == 0:
                    continue
                expected = table.connect_probability(condition, decider, partner)
                low, high = stats.binom.interval(0.95, decisions, expected)
                rows.append(
                    {
                        "condition": str(condition),
                        "decider_action": str(decider),
                        "partner_action": str(partner),
                        "decisions": decisions,
                        "connected": connected,
                        "frequency": connected / decisions,
                        "table_value": expected,
                        "ci_low": low / decisions,
                        "ci_high": high / decisions,
                        "within": bool(low <= connected <= high),
                    }
                )
    return pd.DataFrame(rows, columns=list(CALIBRATION_COLUMNS))


def write_table(frame: pd.DataFrame, path: Path) -> None:
    """Write a CSV with fixed float formatting and empty absent cells."""
    frame.to_csv(
        path,
        index=False,
        float_format=FLOAT_FORMAT,
        na_rep="",
        lineterminator="\n",
    )


async def analyze(run_directory: Path, jobs: int = 1) -> AnalysisReport:
    """Compute all per-round metrics of a run and write the report tables."""
    manifest = read_manifest(run_directory)
    louvain_base = manifest.config.louvain_base_seed
    results = await run_jobs(
        analyze_network,
        [(run_directory, entry, louvain_base) for entry in manifest.sessions],
        jobs,
    )

    trajectories = pd.DataFrame(
        [row for result in results for row in result.rows],
        columns=list(TRAJECTORY_COLUMNS),
    )
    trajectories = trajectories.astype({column: float for column in METRIC_COLUMNS})
    payouts = pd.DataFrame(
        [row for result in results for row in result.payouts],
        columns=["condition", "network_id", "player", "wealth", "usd"],
    )
    ties: Counter[tuple[str, str, str, bool]] = Counter()
    for result in results:
        ties.update(result.ties)

    report = AnalysisReport(
        trajectories=trajectories,
        summary=_summary(network_means(trajectories), manifest),
        trajectory_summary=_trajectory_summary(trajectories),
        payout_summary=_payout_summary(payouts),
        calibration=_calibration(ties, manifest),
    )
    write_table(report.trajectories, run_directory / TRAJECTORIES_FILE)
    write_table(report.summary, run_directory / SUMMARY_FILE)
    write_table(report.trajectory_summary, run_directory / TRAJECTORY_SUMMARY_FILE)
    write_table(report.payout_summary, run_directory / PAYOUT_SUMMARY_FILE)
    write_table(report.calibration, run_directory / CALIBRATION_FILE)
    _LOGGER.info(
        "Analyzed %s networks (%s network-rounds) in %s",
        len(manifest.sessions),
        len(trajectories),
        run_directory,
    )
    return report
