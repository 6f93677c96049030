"""Models for event log records."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Any, ClassVar

from mashumaro.config import BaseConfig
from mashumaro.mixins.json import DataClassJSONMixin
from mashumaro.types import Discriminator

from pyswbnet.const import Action, RecordType, TieDecision, TieState

from ._config import AgentPolicy, SessionConfig
from ._game import EdgeSnapshot, RewiringEvent

# position of each record type inside a round
_PHASE_RANK = {
    RecordType.DECISION: 0,
    RecordType.PAYOFF: 1,
    RecordType.SWB: 2,
    RecordType.REWIRING: 3,
    RecordType.EDGES: 4,
}


@dataclass(kw_only=True)
class LogRecord(DataClassJSONMixin):
    """Base class of all event log records."""

    record_type: ClassVar[RecordType]

    class Config(BaseConfig):
        """Config for Mashumaro serialization."""

        discriminator = Discriminator(field="record_type", include_subtypes=True)

    def __post_serialize__(self, d: dict[Any, Any]) -> dict[Any, Any]:
        # the tag leads every line
        return {"record_type": str(self.record_type), **d}

    def order_key(self, rounds: int) -> tuple[int, int, int, int]:
        """Return the (round, phase, index) position of the record in a log."""
        raise NotImplementedError


@dataclass(kw_only=True)
class HeaderRecord(LogRecord):
    """First record of every log."""

    record_type = RecordType.HEADER
    version: int
    artifact: str
    network_id: str
    config: SessionConfig
    policy: AgentPolicy
    initial_wealth: list[int]

    def order_key(self, rounds: int) -> tuple[int, int, int, int]:
        return (-1, 0, 0, 0)


@dataclass(kw_only=True)
class DecisionRecord(LogRecord):
    """A player's cooperation decision."""

    record_type = RecordType.DECISION
    round: int
    player: int
    action: Action

    def order_key(self, rounds: int) -> tuple[int, int, int, int]:
        return (self.round, _PHASE_RANK[self.record_type], self.player, 0)


@dataclass(kw_only=True)
class PayoffRecord(LogRecord):
    """A player's wealth change in the payoff phase."""

    record_type = RecordType.PAYOFF
    round: int
    player: int
    delta: int
    wealth: int

    def order_key(self, rounds: int) -> tuple[int, int, int, int]:
        return (self.round, _PHASE_RANK[self.record_type], self.player, 0)


@dataclass(kw_only=True)
class SwbRecord(LogRecord):
    """A player's answers to the two well-being questions."""

    record_type = RecordType.SWB
    round: int
    player: int
    q1: int
    q2: int

    def order_key(self, rounds: int) -> tuple[int, int, int, int]:
        return (self.round, _PHASE_RANK[self.record_type], self.player, 0)


@dataclass(kw_only=True)
class RewiringRecord(LogRecord):
    """One selected pair of a rewiring phase."""

    record_type = RecordType.REWIRING
    round: int
    pair: tuple[int, int]
    decider: int
    pre_state: TieState
    decision: TieDecision
    decider_action: Action
    partner_action: Action

    @classmethod
    def from_event(cls, event: RewiringEvent) -> RewiringRecord:
        """Wrap a rewiring event."""
        return cls(
            round=event.round,
            pair=event.pair,
            decider=event.decider,
            pre_state=event.pre_state,
            decision=event.decision,
            decider_action=event.decider_action,
            partner_action=event.partner_action,
        )

    def to_event(self) -> RewiringEvent:
        """Return the wrapped rewiring event."""
        return RewiringEvent(
            round=self.round,
            pair=self.pair,
            decider=self.decider,
            pre_state=self.pre_state,
            decision=self.decision,
            decider_action=self.decider_action,
            partner_action=self.partner_action,
        )

    def order_key(self, rounds: int) -> tuple[int, int, int, int]:
        return (self.round, _PHASE_RANK[self.record_type], *self.pair)


@dataclass(kw_only=True)
class EdgesRecord(LogRecord):
    """Edge snapshot at the end of a round (round 0 is the initial network)."""

    record_type = RecordType.EDGES
    round: int
    edges: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    @classmethod
    def from_snapshot(cls, snapshot: EdgeSnapshot) -> EdgesRecord:
        """Wrap an edge snapshot."""
        return cls(round=snapshot.round, edges=snapshot.edges)

    def to_snapshot(self) -> EdgeSnapshot:
        """Return the wrapped edge snapshot."""
        return EdgeSnapshot(round=self.round, edges=self.edges)

    def order_key(self, rounds: int) -> tuple[int, int, int, int]:
        return (self.round, _PHASE_RANK[self.record_type], 0, 0)


@dataclass(kw_only=True)
class PayoutRecord(LogRecord):
    """Final points and money paid to a player."""

    record_type = RecordType.PAYOUT
    player: int
    wealth: int
    usd: float

    def order_key(self, rounds: int) -> tuple[int, int, int, int]:
        return (rounds + 1, 0, self.player, 0)


@dataclass(kw_only=True)
class EventLog:
    """Append-only record stream of one session."""

    header: HeaderRecord
    decisions: list[DecisionRecord] = field(default_factory=list)
    payoffs: list[PayoffRecord] = field(default_factory=list)
    ratings: list[SwbRecord] = field(default_factory=list)
    rewirings: list[RewiringRecord] = field(default_factory=list)
    snapshots: list[EdgesRecord] = field(default_factory=list)
    payouts: list[PayoutRecord] = field(default_factory=list)

    def append(self, record: LogRecord) -> None:
        """Append a record to the list of its type."""
        match record:
            case DecisionRecord():
                self.decisions.append(record)
            case PayoffRecord():
                self.payoffs.append(record)
            case SwbRecord():
                self.ratings.append(record)
            case RewiringRecord():
                self.rewirings.append(record)
            case EdgesRecord():
                self.snapshots.append(record)
            case PayoutRecord():
                self.payouts.append(record)
            case _:
                raise TypeError(f"Cannot append {type(record).__name__} to a log")

    def records(self) -> Iterator[LogRecord]:
        """Yield every record in canonical (round, phase, index) order."""
        rounds = self.config.rounds
        yield self.header
        body: list[LogRecord] = [
            *self.decisions,
            *self.payoffs,
            *self.ratings,
            *self.rewirings,
            *self.snapshots,
            *self.payouts,
        ]
        yield from sorted(body, key=lambda record: record.order_key(rounds))

    @property
    def config(self) -> SessionConfig:
        """Return the session config."""
        return self.header.config

    @property
    def network_id(self) -> str:
        """Return the network identifier."""
        return self.header.network_id

    def actions(self, round_number: int) -> list[Action]:
        """Return every player's action in a round."""
        found = {r.player: r.action for r in self.decisions if r.round == round_number}
        return [found[player] for player in range(self.config.n_players)]

    def wealth_after(self, round_number: int) -> list[int]:
        """Return every player's wealth after the payoff phase of a round."""
        found = {r.player: r.wealth for r in self.payoffs if r.round == round_number}
        return [found[player] for player in range(self.config.n_players)]

    def swb(self, round_number: int) -> list[tuple[int, int]]:
        """Return every player's (q1, q2) answers in a round."""
        found = {
            r.player: (r.q1, r.q2) for r in self.ratings if r.round == round_number
        }
        return [found[player] for player in range(self.config.n_players)]

    def snapshot(self, round_number: int) -> EdgeSnapshot:
        """Return the edge snapshot taken at the end of a round."""
        for record in self.snapshots:
            if record.round == round_number:
                return record.to_snapshot()
        raise KeyError(f"No edge snapshot for round {round_number}")

    def rewiring_events(self, round_number: int | None = None) -> list[RewiringEvent]:
        """Return the rewiring events of one round, or of the whole session."""
        return [
            record.to_event()
            for record in self.rewirings
            if round_number is None or record.round == round_number
        ]

    @property
    def final_wealth(self) -> list[int]:
        """Return every player's final points."""
        found = {r.player: r.wealth for r in self.payouts}
        return [found[player] for player in range(self.config.n_players)]
