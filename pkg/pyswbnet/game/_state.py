"""Mutable per-session state."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from pyswbnet.const import Action, Phase
from pyswbnet.exceptions import InvalidArgument
from pyswbnet.models import SessionConfig
from pyswbnet.network import Network, random_network

_LOGGER = logging.getLogger(__name__)


@dataclass(kw_only=True)
class SessionState:
    """State of one networked group between phases."""

    config: SessionConfig
    network: Network
    wealth: list[int]
    last_action: list[Action | None]
    last_swb: list[tuple[int, int] | None]
    rng: np.random.Generator = field(repr=False)
    round: int = 0
    phase: Phase = Phase.DECIDE

    @property
    def n(self) -> int:
        """Return the number of players."""
        return self.config.n_players

    @property
    def total_wealth(self) -> int:
        """Return the summed wealth of all players."""
        return sum(self.wealth)


def init_session(
    config: SessionConfig, *, wealth: Sequence[int] | None = None
) -> SessionState:
    """Create the round-0 state: a random network and rich/poor endowments.

    `wealth` replaces the random endowment draw, e.g. to force a rich/poor split.
    """
    rng = np.random.default_rng(config.seed)
    network = random_network(config.n_players, config.initial_density, rng)
    if wealth is None:
        rich = rng.random(config.n_players) < config.rich_fraction
        initial = [
            config.rich_wealth if is_rich else config.poor_wealth for is_rich in rich
        ]
    else:
        if len(wealth) != config.n_players:
            raise InvalidArgument(
                f"Need {config.n_players} wealth values, got {len(wealth)}"
            )
        initial = [int(value) for value in wealth]

    _LOGGER.debug(
        "Initialized %s session (seed %s): %s edges, wealth %s",
        config.condition,
        config.seed,
        network.edge_count,
        initial,
    )
    return SessionState(
        config=config,
        network=network,
        wealth=initial,
        last_action=[None] * config.n_players,
        last_swb=[None] * config.n_players,
        rng=rng,
    )
