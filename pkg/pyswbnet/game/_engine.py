"""Round state machine of the networked public goods game."""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping, Sequence
from math import comb

from pyswbnet.const import (
    SWB_MAX,
    SWB_MIN,
    Action,
    Condition,
    Phase,
    Reputation,
    SwbAnswer,
    TieDecision,
    TieRole,
    TieState,
)
from pyswbnet.exceptions import InvalidArgument, ProtocolError
from pyswbnet.models import (
    DecisionRecord,
    EdgesRecord,
    EventLog,
    PayoffRecord,
    PayoutRecord,
    PeerView,
    RewiringEvent,
    RewiringRecord,
    SwbRecord,
    TieContext,
)
from pyswbnet.network import iter_pairs

from ._state import SessionState

_LOGGER = logging.getLogger(__name__)

type TieDecider = Callable[[TieContext], bool]
type Rating = int | SwbAnswer


def payout(wealth: int, points_per_usd: int = 2000) -> float:
    """Convert final points to USD; negative wealth pays nothing."""
    return max(0, wealth) / points_per_usd


def _level(value: Rating, player: int) -> int:
    if isinstance(value, SwbAnswer):
        return value.level
    if isinstance(value, bool) or not SWB_MIN <= value <= SWB_MAX:
        raise InvalidArgument(
            f"Rating {value!r} of player {player} is outside {SWB_MIN}..{SWB_MAX}"
        )
    return int(value)


class GameEngine:
    """Drive a session through decide, rate and rewire phases.

    When constructed with an event log, every phase appends its records.
    """

    def __init__(self, state: SessionState, log: EventLog | None = None) -> None:
        """Wrap a session state."""
        self.state = state
        self.log = log

    @property
    def condition(self) -> Condition:
        """Return the session's visibility condition."""
        return self.state.config.condition

    def _expect(self, phase: Phase) -> None:
        if self.state.phase is not phase:
            raise ProtocolError(
                f"Round {self.state.round}: expected phase {phase}, "
                f"session is in phase {self.state.phase}"
            )

    def _check_player(self, player: int) -> None:
        if not 0 <= player < self.state.n:
            raise InvalidArgument(f"Player {player} out of range 0..{self.state.n - 1}")

    def record_snapshot(self) -> None:
        """Append the current edges to the log as the end-of-round snapshot."""
        if self.log is not None:
            snapshot = self.state.network.snapshot(self.state.round)
            self.log.append(EdgesRecord.from_snapshot(snapshot))

    def apply_pgg_round(
        self, decisions: Sequence[Action] | Mapping[int, Action]
    ) -> list[int]:
        """Charge cooperators and pay their neighbors; return each wealth delta."""
        self._expect(Phase.DECIDE)
        state = self.state
        if state.round >= state.config.rounds:
            raise ProtocolError(
                f"Round {state.round}: session already played "
                f"{state.config.rounds} rounds"
            )
        actions: list[Action] = []
        for player in range(state.n):
            try:
                actions.append(Action(decisions[player]))
            except (IndexError, KeyError) as exc:
                raise ProtocolError(
                    f"Round {state.round + 1}: missing decision for player {player}"
                ) from exc
            except ValueError as exc:
                raise ProtocolError(
                    f"Round {state.round + 1}: invalid decision "
                    f"{decisions[player]!r} for player {player}"
                ) from exc

        cost = state.config.cooperation_cost_per_edge
        benefit = state.config.cooperation_benefit_per_edge
        deltas: list[int] = []
        for player in range(state.n):
            neighbors = state.network.neighbors(player)
            delta = benefit * sum(
                actions[peer] is Action.COOPERATE for peer in neighbors
            )
            if actions[player] is Action.COOPERATE:
                delta -= cost * len(neighbors)
            deltas.append(delta)

        state.round += 1
        for player, (action, delta) in enumerate(zip(actions, deltas, strict=True)):
            state.wealth[player] += delta
            state.last_action[player] = action
        state.phase = Phase.RATE

        if self.log is not None:
            for player, action in enumerate(actions):
                self.log.append(
                    DecisionRecord(round=state.round, player=player, action=action)
                )
            for player, delta in enumerate(deltas):
                self.log.append(
                    PayoffRecord(
                        round=state.round,
                        player=player,
                        delta=delta,
                        wealth=state.wealth[player],
                    )
                )
        _LOGGER.debug(
            "Round %s: %s cooperators, wealth change %s",
            state.round,
            actions.count(Action.COOPERATE),
            sum(deltas),
        )
        return deltas

    def apply_swb_phase(self, ratings: Sequence[tuple[Rating, Rating]]) -> None:
        """Record every player's answers to the two well-being questions."""
        self._expect(Phase.RATE)
        state = self.state
        if len(ratings) != state.n:
            raise ProtocolError(
                f"Round {state.round}: expected {state.n} ratings, got {len(ratings)}"
            )
        levels = [
            (_level(q1, player), _level(q2, player))
            for player, (q1, q2) in enumerate(ratings)
        ]
        state.last_swb = list(levels)
        state.phase = Phase.REWIRE

        if self.log is not None:
            for player, (q1, q2) in enumerate(levels):
                self.log.append(
                    SwbRecord(round=state.round, player=player, q1=q1, q2=q2)
                )

    def peer_view(self, viewer: int, peer: int) -> PeerView:
        """Return what `viewer` sees of `peer`."""
        self._check_player(viewer)
        self._check_player(peer)
        state = self.state
        emoji = None
        if self.condition is Condition.VISIBLE and state.last_swb[peer] is not None:
            emoji = state.last_swb[peer][1]
        return PeerView(
            peer=peer,
            reputation=Reputation.from_action(state.last_action[peer]),
            wealth=state.wealth[peer],
            swb_emoji=emoji,
        )

    def visibility_view(self, viewer: int) -> list[PeerView]:
        """Return the views of all peers connected to `viewer`, by index."""
        self._check_player(viewer)
        return [
            self.peer_view(viewer, peer)
            for peer in sorted(self.state.network.neighbors(viewer))
        ]

    def _ask(self, tie_decider: TieDecider, context: TieContext) -> bool:
        try:
            return bool(tie_decider(context))
        except Exception as exc:
            raise ProtocolError(
                f"Round {context.round}, phase {Phase.REWIRE}: tie decision of "
                f"player {context.decider} failed: {exc!r}"
            ) from exc

    def rewiring_phase(self, tie_decider: TieDecider) -> list[RewiringEvent]:
        """Give randomly selected pairs the chance to cut or create a tie.

        A connected pair's decider keeps or cuts the tie alone. For an
        unconnected pair the decider may propose, and the partner then
        accepts or rejects.
        """
        self._expect(Phase.REWIRE)
        state = self.state
        n = state.n
        draws = state.rng.random(comb(n, 2))
        selected = [
            pair
            for pair, draw in zip(iter_pairs(n), draws)
            if draw < state.config.rewiring_pair_probability
        ]

        events: list[RewiringEvent] = []
        for pair in selected:
            decider = pair[int(state.rng.integers(2))]
            partner = pair[1] if decider == pair[0] else pair[0]
            decider_action = state.last_action[decider]
            partner_action = state.last_action[partner]
            if decider_action is None or partner_action is None:
                raise ProtocolError(
                    f"Round {state.round}: rewiring before any decision was made"
                )
            connected = state.network.has_edge(*pair)
            pre_state = TieState.CONNECTED if connected else TieState.UNCONNECTED
            wants_tie = self._ask(
                tie_decider,
                TieContext(
                    round=state.round,
                    decider=decider,
                    decider_action=decider_action,
                    partner=self.peer_view(decider, partner),
                    pre_state=pre_state,
                    role=TieRole.MAINTAIN if connected else TieRole.PROPOSE,
                ),
            )
            if connected:
                decision = TieDecision.KEEP if wants_tie else TieDecision.CUT
            elif not wants_tie:
                decision = TieDecision.NO_TIE
            else:
                accepted = self._ask(
                    tie_decider,
                    TieContext(
                        round=state.round,
                        decider=partner,
                        decider_action=partner_action,
                        partner=self.peer_view(partner, decider),
                        pre_state=pre_state,
                        role=TieRole.ACCEPT,
                    ),
                )
                decision = (
                    TieDecision.PROPOSE_ACCEPT
                    if accepted
                    else TieDecision.PROPOSE_REJECT
                )
            events.append(
                RewiringEvent(
                    round=state.round,
                    pair=pair,
                    decider=decider,
                    pre_state=pre_state,
                    decision=decision,
                    decider_action=decider_action,
                    partner_action=partner_action,
                )
            )

        self.apply_rewiring_events(events)
        return events

    def apply_rewiring_events(self, events: Sequence[RewiringEvent]) -> None:
        """Apply decided rewiring events and close the round."""
        self._expect(Phase.REWIRE)
        state = self.state
        for event in events:
            if event.round != state.round:
                raise ProtocolError(
                    f"Round {state.round}: rewiring event belongs to "
                    f"round {event.round}"
                )
            connected = state.network.has_edge(*event.pair)
            if connected != (event.pre_state is TieState.CONNECTED):
                raise ProtocolError(
                    f"Round {state.round}: pair {event.pair} is "
                    f"{'connected' if connected else 'unconnected'}, "
                    f"event says {event.pre_state}"
                )
            if event.connected_after:
                state.network.add_edge(*event.pair)
            else:
                state.network.remove_edge(*event.pair)

        if self.log is not None:
            for event in events:
                self.log.append(RewiringRecord.from_event(event))
        self.record_snapshot()
        state.phase = (
            Phase.FINISHED if state.round >= state.config.rounds else Phase.DECIDE
        )
        _LOGGER.debug(
            "Round %s: %s rewiring events, %s edges",
            state.round,
            len(events),
            state.network.edge_count,
        )

    def finish(self) -> list[float]:
        """Pay every player out; return the USD amounts."""
        self._expect(Phase.FINISHED)
        state = self.state
        per_usd = state.config.points_per_usd
        amounts = [payout(wealth, per_usd) for wealth in state.wealth]
        if self.log is not None:
            paid = zip(state.wealth, amounts, strict=True)
            for player, (wealth, usd) in enumerate(paid):
                self.log.append(PayoutRecord(player=player, wealth=wealth, usd=usd))
        return amounts
