"""Whole-session driver and replay."""

from __future__ import annotations

import logging

from pyswbnet.agents import decide_cooperation, decide_tie, rate_swb
from pyswbnet.const import ARTIFACT_VERSION, LOG_FORMAT_VERSION, Phase
from pyswbnet.exceptions import ProtocolError, ReplayMismatch
from pyswbnet.models import (
    AgentPolicy,
    EventLog,
    HeaderRecord,
    SessionConfig,
    TieContext,
)
from pyswbnet.network import Network

from ._engine import GameEngine
from ._state import SessionState, init_session

_LOGGER = logging.getLogger(__name__)


def run_session(
    config: SessionConfig, policy: AgentPolicy, network_id: str = ""
) -> EventLog:
    """Play all rounds of one session and return its complete event log."""
    state = init_session(config)
    log = EventLog(
        header=HeaderRecord(
            version=LOG_FORMAT_VERSION,
            artifact=ARTIFACT_VERSION,
            network_id=network_id,
            config=config,
            policy=policy,
            initial_wealth=list(state.wealth),
        )
    )
    engine = GameEngine(state, log)
    engine.record_snapshot()
    rng = state.rng
    condition = config.condition

    def tie_decider(context: TieContext) -> bool:
        return decide_tie(
            policy,
            condition,
            context.decider_action,
            context.partner.reputation,
            context.pre_state,
            rng,
            partner_emoji=context.partner.swb_emoji,
        )

    while state.phase is not Phase.FINISHED:
        # draws are taken in player order to keep the stream reproducible
        decisions = [
            decide_cooperation(policy, condition, engine.visibility_view(player), rng)
            for player in range(state.n)
        ]
        engine.apply_pgg_round(decisions)
        engine.apply_swb_phase(
            [rate_swb(policy, state, player) for player in range(state.n)]
        )
        engine.rewiring_phase(tie_decider)

    engine.finish()
    _LOGGER.debug(
        "Session %s finished after %s rounds, total wealth %s",
        network_id or config.seed,
        state.round,
        state.total_wealth,
    )
    return log


def replay_session(log: EventLog) -> SessionState:
    """Re-apply a log through the engine and check it against the recorded state."""
    config = log.config
    try:
        initial = log.snapshot(0)
    except KeyError as exc:
        raise ReplayMismatch("Log has no initial edge snapshot") from exc

    state = init_session(config, wealth=log.header.initial_wealth)
    state.network = Network.from_snapshot(config.n_players, initial)
    engine = GameEngine(state)

    for round_number in range(1, config.rounds + 1):
        try:
            actions = log.actions(round_number)
            wealth = log.wealth_after(round_number)
            ratings = log.swb(round_number)
            snapshot = log.snapshot(round_number)
        except KeyError as exc:
            raise ReplayMismatch(
                f"Round {round_number}: log is missing records ({exc})"
            ) from exc

        engine.apply_pgg_round(actions)
        if state.wealth != wealth:
            raise ReplayMismatch(
                f"Round {round_number}: replayed wealth {state.wealth} "
                f"differs from logged {wealth}"
            )
        engine.apply_swb_phase(ratings)
        try:
            engine.apply_rewiring_events(log.rewiring_events(round_number))
        except ReplayMismatch:
            raise
        except ProtocolError as exc:
            raise ReplayMismatch(str(exc)) from exc
        if state.network.edges != snapshot.edges:
            raise ReplayMismatch(
                f"Round {round_number}: replayed edges differ from the logged snapshot"
            )

    if log.payouts and state.wealth != log.final_wealth:
        raise ReplayMismatch(
            f"Replayed final wealth {state.wealth} "
            f"differs from logged {log.final_wealth}"
        )
    return state
