"""Models exchanged during a session."""

from __future__ import annotations

from dataclasses import dataclass, field

from mashumaro.mixins.json import DataClassJSONMixin

from pyswbnet.const import Action, Reputation, TieDecision, TieRole, TieState


@dataclass(kw_only=True, frozen=True)
class EdgeSnapshot(DataClassJSONMixin):
    """Immutable copy of a network's edges at the end of a round."""

    round: int
    edges: tuple[tuple[int, int], ...] = field(default_factory=tuple)


@dataclass(kw_only=True, frozen=True)
class PeerView(DataClassJSONMixin):
    """What a player sees of another player.

    `swb_emoji` is `None` when hidden, i.e. always in the invisible condition
    and before the peer's first rating in the visible condition.
    """

    peer: int
    reputation: Reputation
    wealth: int
    swb_emoji: int | None = None


@dataclass(kw_only=True, frozen=True)
class TieContext:
    """A single tie question put to a player during rewiring."""

    round: int
    decider: int
    decider_action: Action
    partner: PeerView
    pre_state: TieState
    role: TieRole


@dataclass(kw_only=True, frozen=True)
class RewiringEvent(DataClassJSONMixin):
    """Outcome of one selected pair in a rewiring phase."""

    round: int
    pair: tuple[int, int]
    decider: int
    pre_state: TieState
    decision: TieDecision
    decider_action: Action
    partner_action: Action

    @property
    def partner(self) -> int:
        """Return the pair member that did not decide first."""
        u, v = self.pair
        return v if self.decider == u else u

    @property
    def connected_after(self) -> bool:
        """Return whether the pair is connected after the decision."""
        return self.decision in (TieDecision.KEEP, TieDecision.PROPOSE_ACCEPT)
