"""Models for protocol, calibration and run configuration."""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any

from mashumaro.config import BaseConfig
from mashumaro.mixins.json import DataClassJSONMixin

from pyswbnet.const import QUINTILES, SWB_MAX, SWB_MIN, Action, Condition, PolicyKind
from pyswbnet.exceptions import InvalidConfig
from pyswbnet.util import derive_seed

_LOGGER = logging.getLogger(__name__)

C = Action.COOPERATE
D = Action.DEFECT

MEASURED_CONNECT_PROB: dict[Condition, dict[Action, dict[Action, float]]] = {
    Condition.INVISIBLE: {C: {C: 0.861, D: 0.295}, D: {D: 0.605, C: 0.721}},
    Condition.VISIBLE: {C: {C: 0.820, D: 0.303}, D: {D: 0.564, C: 0.782}},
}
MEASURED_COOP_RATE: dict[Condition, float] = {
    Condition.INVISIBLE: 0.533,
    Condition.VISIBLE: 0.493,
}
DEFAULT_SWB_MAPPING = (0, 1, 1, 1, 2)


def _check_probability(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise InvalidConfig(name, f"{value} is not a probability in [0, 1]")


def _check_non_negative(name: str, value: float) -> None:
    if value < 0:
        raise InvalidConfig(name, f"{value} must not be negative")


def _check_swb_mapping(name: str, mapping: tuple[int, ...]) -> None:
    if len(mapping) != QUINTILES:
        raise InvalidConfig(name, f"need {QUINTILES} levels, got {len(mapping)}")
    if any(not SWB_MIN <= level <= SWB_MAX for level in mapping):
        raise InvalidConfig(name, f"levels must lie in {SWB_MIN}..{SWB_MAX}")
    if any(low > high for low, high in zip(mapping, mapping[1:])):
        raise InvalidConfig(name, "must be non-decreasing in wealth quintile")


@dataclass(kw_only=True, frozen=True)
class CalibrationTable(DataClassJSONMixin):
    """Measured tie-decision probabilities and cooperation rates per condition."""

    connect_prob: dict[Condition, dict[Action, dict[Action, float]]] = field(
        default_factory=lambda: {
            condition: {decider: dict(row) for decider, row in table.items()}
            for condition, table in MEASURED_CONNECT_PROB.items()
        }
    )
    coop_rate: dict[Condition, float] = field(
        default_factory=lambda: dict(MEASURED_COOP_RATE)
    )

    class Config(BaseConfig):
        """Config for Mashumaro deserialization."""

        forbid_extra_keys = True

    def __post_init__(self) -> None:
        for condition in Condition:
            if condition not in self.connect_prob:
                raise InvalidConfig(
                    f"calibration.connect_prob.{condition}", "missing condition"
                )
            if condition not in self.coop_rate:
                raise InvalidConfig(
                    f"calibration.coop_rate.{condition}", "missing condition"
                )
            _check_probability(
                f"calibration.coop_rate.{condition}", self.coop_rate[condition]
            )
            for decider in Action:
                for partner in Action:
                    name = f"calibration.connect_prob.{condition}.{decider}.{partner}"
                    try:
                        value = self.connect_prob[condition][decider][partner]
                    except KeyError as exc:
                        raise InvalidConfig(name, "missing cell") from exc
                    _check_probability(name, value)

    def connect_probability(
        self, condition: Condition, decider: Action, partner: Action
    ) -> float:
        """Return the probability that `decider` chooses to be tied to `partner`."""
        return self.connect_prob[condition][decider][partner]

    def swapped(self) -> CalibrationTable:
        """Return the table with the two conditions exchanged."""
        visible, invisible = Condition.VISIBLE, Condition.INVISIBLE
        return CalibrationTable(
            connect_prob={
                visible: self.connect_prob[invisible],
                invisible: self.connect_prob[visible],
            },
            coop_rate={
                visible: self.coop_rate[invisible],
                invisible: self.coop_rate[visible],
            },
        )

    def uniform(self, source: Condition) -> CalibrationTable:
        """Return a table where both conditions use the `source` condition's values."""
        return CalibrationTable(
            connect_prob={
                condition: self.connect_prob[source] for condition in Condition
            },
            coop_rate={condition: self.coop_rate[source] for condition in Condition},
        )


@dataclass(kw_only=True, frozen=True)
class AgentPolicy(DataClassJSONMixin):
    """Behavioural policy shared by all simulated players of a session.

    `swb_mapping` gives the answer to the first question by wealth quintile.
    The shown answer (q2) uses `display_mapping` when set, else the same level.
    `alpha` and `beta` only matter for the conditional cooperator. The
    `emoji_weight` hook shifts tie probabilities by the partner's visible
    emoji and is disabled (0) by default.
    """

    kind: PolicyKind = PolicyKind.CALIBRATED_BERNOULLI
    table: CalibrationTable = field(default_factory=CalibrationTable)
    swb_mapping: tuple[int, ...] = DEFAULT_SWB_MAPPING
    display_mapping: tuple[int, ...] | None = None
    alpha: float = 0.2
    beta: float = 0.6
    emoji_weight: float = 0.0

    class Config(BaseConfig):
        """Config for Mashumaro serialization."""

        omit_none = True

    def __post_init__(self) -> None:
        _check_swb_mapping("swb_mapping", self.swb_mapping)
        if self.display_mapping is not None:
            _check_swb_mapping("display_mapping", self.display_mapping)


@dataclass(kw_only=True, frozen=True)
class GameParameters(DataClassJSONMixin):
    """Protocol constants shared by every session of an experiment."""

    n_players: int = 13
    rounds: int = 15
    initial_density: float = 0.3
    rich_wealth: int = 1150
    poor_wealth: int = 200
    rich_fraction: float = 0.3
    cooperation_cost_per_edge: int = 50
    cooperation_benefit_per_edge: int = 100
    rewiring_pair_probability: float = 0.3
    points_per_usd: int = 2000

    def __post_init__(self) -> None:
        if self.n_players < 2:
            raise InvalidConfig(
                "n_players", f"need at least 2 players, got {self.n_players}"
            )
        if self.rounds < 1:
            raise InvalidConfig("rounds", f"need at least 1 round, got {self.rounds}")
        for name in ("initial_density", "rich_fraction", "rewiring_pair_probability"):
            _check_probability(name, getattr(self, name))
        for name in (
            "rich_wealth",
            "poor_wealth",
            "cooperation_cost_per_edge",
            "cooperation_benefit_per_edge",
        ):
            _check_non_negative(name, getattr(self, name))
        if self.points_per_usd <= 0:
            raise InvalidConfig("points_per_usd", "must be positive")

    def game_parameters(self) -> dict[str, Any]:
        """Return only the protocol constants as keyword arguments."""
        return {f.name: getattr(self, f.name) for f in fields(GameParameters)}


@dataclass(kw_only=True, frozen=True)
class SessionConfig(GameParameters):
    """Protocol parameters of a single networked group."""

    condition: Condition = Condition.INVISIBLE
    seed: int = 0

    def __post_init__(self) -> None:
        super().__post_init__()
        _check_non_negative("seed", self.seed)


@dataclass(kw_only=True, frozen=True)
class RunConfig(GameParameters):
    """Configuration of a batch of sessions over both conditions."""

    seed: int = 0
    replicates_per_condition: int = 25
    conditions: tuple[Condition, ...] = (Condition.VISIBLE, Condition.INVISIBLE)
    calibration: CalibrationTable = field(default_factory=CalibrationTable)
    policy: PolicyKind = PolicyKind.CALIBRATED_BERNOULLI
    swb_mapping: tuple[int, ...] = DEFAULT_SWB_MAPPING
    display_mapping: tuple[int, ...] | None = None
    alpha: float = 0.2
    beta: float = 0.6
    emoji_weight: float = 0.0
    louvain_seed: int | None = None
    output_directory: Path = Path("runs/latest")
    permutation_iterations: int = 10_000
    mediation_bootstrap: int = 2_000

    class Config(BaseConfig):
        """Config for Mashumaro deserialization."""

        forbid_extra_keys = True

    def __post_init__(self) -> None:
        super().__post_init__()
        _check_non_negative("seed", self.seed)
        if self.replicates_per_condition < 1:
            raise InvalidConfig(
                "replicates_per_condition",
                f"need at least 1 replicate, got {self.replicates_per_condition}",
            )
        if not self.conditions or len(set(self.conditions)) != len(self.conditions):
            raise InvalidConfig("conditions", "must list each condition at most once")
        if self.permutation_iterations < 1000:
            raise InvalidConfig("permutation_iterations", "need at least 1000")
        if self.mediation_bootstrap < 1000:
            raise InvalidConfig("mediation_bootstrap", "need at least 1000")
        # validates the policy fields
        self.agent_policy()

    @property
    def louvain_base_seed(self) -> int:
        """Return the seed Louvain streams are split from."""
        return self.seed if self.louvain_seed is None else self.louvain_seed

    def agent_policy(self) -> AgentPolicy:
        """Return the policy all simulated players follow."""
        return AgentPolicy(
            kind=self.policy,
            table=self.calibration,
            swb_mapping=self.swb_mapping,
            display_mapping=self.display_mapping,
            alpha=self.alpha,
            beta=self.beta,
            emoji_weight=self.emoji_weight,
        )

    def session_config(self, condition: Condition, replicate: int) -> SessionConfig:
        """Return the config of one session with its split seed."""
        return SessionConfig(
            **self.game_parameters(),
            condition=condition,
            seed=derive_seed(self.seed, str(condition), replicate),
        )

    def with_overrides(self, overrides: Mapping[str, Any]) -> RunConfig:
        """Return a copy with the non-None overrides applied."""
        changes = {key: value for key, value in overrides.items() if value is not None}
        if changes:
            _LOGGER.debug("Config overrides: %s", changes)
        return replace(self, **changes)
