"""Behavioural policies of simulated players."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from pyswbnet.const import (
    QUINTILES,
    SWB_MAX,
    Action,
    Condition,
    PolicyKind,
    Reputation,
    TieDecision,
    TieState,
)
from pyswbnet.exceptions import InvalidArgument
from pyswbnet.models import AgentPolicy, PeerView, RewiringEvent

if TYPE_CHECKING:
    from pyswbnet.game import SessionState

_LOGGER = logging.getLogger(__name__)


class TieObservation(NamedTuple):
    """A single connect-or-not choice extracted from a rewiring event."""

    condition: Condition
    decider_action: Action
    partner_action: Action
    connected: bool


def _clamp(value: float) -> float:
    return min(1.0, max(0.0, value))


def _resolve(
    action: Action | Reputation,
    policy: AgentPolicy,
    condition: Condition,
    rng: np.random.Generator,
) -> Action:
    """Turn an unknown reputation into C or D at the condition's base rate."""
    if action == Reputation.UNKNOWN:
        if rng.random() < policy.table.coop_rate[condition]:
            return Action.COOPERATE
        return Action.DEFECT
    return Action(str(action))


def decide_cooperation(
    policy: AgentPolicy,
    condition: Condition,
    view: Sequence[PeerView],
    rng: np.random.Generator,
) -> Action:
    """Return a player's cooperation decision for the round."""
    match policy.kind:
        case PolicyKind.ALWAYS_COOPERATE:
            return Action.COOPERATE
        case PolicyKind.ALWAYS_DEFECT:
            return Action.DEFECT
        case PolicyKind.CONDITIONAL_COOPERATOR:
            known = [peer for peer in view if peer.reputation != Reputation.UNKNOWN]
            if known:
                share = sum(
                    peer.reputation == Reputation.COOPERATE for peer in known
                ) / len(known)
                probability = _clamp(policy.alpha + policy.beta * share)
            else:
                probability = policy.table.coop_rate[condition]
        case _:
            probability = policy.table.coop_rate[condition]

    if rng.random() < probability:
        return Action.COOPERATE
    return Action.DEFECT


def connect_probability(
    policy: AgentPolicy,
    condition: Condition,
    decider_action: Action,
    partner_action: Action,
    partner_emoji: int | None = None,
) -> float:
    """Return the probability that the decider wants a tie to the partner.

    A non-zero `emoji_weight` shifts the probability by the partner's visible
    emoji level, scaled to +-`emoji_weight` at the ends of the scale.
    """
    probability = policy.table.connect_probability(
        condition, decider_action, partner_action
    )
    if partner_emoji is not None and policy.emoji_weight:
        shift = policy.emoji_weight * partner_emoji / SWB_MAX
        probability = _clamp(probability + shift)
    return probability


def decide_tie(
    policy: AgentPolicy,
    condition: Condition,
    decider_action: Action | Reputation,
    partner_action: Action | Reputation,
    pre_state: TieState,
    rng: np.random.Generator,
    partner_emoji: int | None = None,
) -> bool:
    """Return whether the decider wants the pair to be (or stay) connected.

    For a connected pair True means keep, for an unconnected pair it means
    propose, or accept when the decider was asked to accept a proposal.
    """
    decider = _resolve(decider_action, policy, condition, rng)
    partner = _resolve(partner_action, policy, condition, rng)
    probability = connect_probability(
        policy, condition, decider, partner, partner_emoji
    )
    wants_tie = bool(rng.random() < probability)
    _LOGGER.debug(
        "Tie decision %s->%s (%s, p=%s): %s",
        decider,
        partner,
        pre_state,
        probability,
        wants_tie,
    )
    return wants_tie


def wealth_quintile(wealth: Sequence[int], player: int) -> int:
    """Return the player's wealth quintile (0 = bottom) by strict rank.

    Tied players share the quintile of the lowest member of the tie.
    """
    if not 0 <= player < len(wealth):
        raise InvalidArgument(f"Player {player} out of range 0..{len(wealth) - 1}")
    values = np.asarray(wealth)
    below = int(np.count_nonzero(values < values[player]))
    return min(QUINTILES - 1, QUINTILES * below // len(values))


def rate_swb(policy: AgentPolicy, state: SessionState, player: int) -> tuple[int, int]:
    """Return the player's answers (q1, q2) to the two well-being questions."""
    quintile = wealth_quintile(state.wealth, player)
    shown = policy.display_mapping or policy.swb_mapping
    return policy.swb_mapping[quintile], shown[quintile]


def tie_decisions(
    events: Iterable[RewiringEvent], condition: Condition
) -> list[TieObservation]:
    """Extract every individual connect-or-not choice from rewiring events.

    Accepted and rejected proposals contribute a second choice, made by the
    partner towards the proposer.
    """
    observations: list[TieObservation] = []
    for event in events:
        match event.decision:
            case TieDecision.KEEP | TieDecision.CUT:
                connected = event.decision is TieDecision.KEEP
            case TieDecision.NO_TIE:
                connected = False
            case _:
                connected = True
        observations.append(
            TieObservation(
                condition, event.decider_action, event.partner_action, connected
            )
        )
        if event.decision in (TieDecision.PROPOSE_ACCEPT, TieDecision.PROPOSE_REJECT):
            observations.append(
                TieObservation(
                    condition,
                    event.partner_action,
                    event.decider_action,
                    event.decision is TieDecision.PROPOSE_ACCEPT,
                )
            )
    return observations
