"""Constants for the networked public goods game."""

from __future__ import annotations

from enum import StrEnum

ARTIFACT_VERSION = "1.0.0"
LOG_FORMAT_VERSION = 1

SWB_MIN = -2
SWB_MAX = 2
QUINTILES = 5

MANIFEST_FILE = "manifest.json"
LOG_DIRECTORY = "logs"
LOG_SUFFIX = ".jsonl"
TRAJECTORIES_FILE = "trajectories.csv"
SUMMARY_FILE = "summary.csv"
TRAJECTORY_SUMMARY_FILE = "trajectory_summary.csv"
PAYOUT_SUMMARY_FILE = "payout_summary.csv"
REPLICATION_FILE = "replication.csv"
CALIBRATION_FILE = "calibration.csv"


class Condition(StrEnum):
    """Visibility of peers' subjective well-being."""

    VISIBLE = "visible"
    INVISIBLE = "invisible"


class Action(StrEnum):
    """Public goods game decisions."""

    COOPERATE = "C"
    DEFECT = "D"


class Reputation(StrEnum):
    """A peer's prior-round decision as shown to others."""

    COOPERATE = "C"
    DEFECT = "D"
    UNKNOWN = "unknown"

    @classmethod
    def from_action(cls, action: Action | None) -> Reputation:
        """Convert a last action (or no action yet) to a reputation."""
        if action is None:
            return cls.UNKNOWN
        return cls(action.value)


class TieState(StrEnum):
    """Whether a rewiring pair was connected before the decision."""

    CONNECTED = "connected"
    UNCONNECTED = "unconnected"


class TieDecision(StrEnum):
    """Outcome of a rewiring opportunity."""

    KEEP = "keep"
    CUT = "cut"
    PROPOSE_ACCEPT = "propose_accept"
    PROPOSE_REJECT = "propose_reject"
    NO_TIE = "no_tie"


class TieRole(StrEnum):
    """Which tie question a player is asked."""

    MAINTAIN = "maintain"
    PROPOSE = "propose"
    ACCEPT = "accept"


class Phase(StrEnum):
    """Phases of a round, in protocol order."""

    DECIDE = "decide"
    RATE = "rate"
    REWIRE = "rewire"
    FINISHED = "finished"


class PolicyKind(StrEnum):
    """Behavioural policy families."""

    CALIBRATED_BERNOULLI = "calibrated"
    CONDITIONAL_COOPERATOR = "conditional"
    ALWAYS_COOPERATE = "always_c"
    ALWAYS_DEFECT = "always_d"


class SwbAnswer(StrEnum):
    """The five answer options of both well-being questions."""

    VERY_GOOD = "very good"
    GOOD = "good"
    NEUTRAL = "neutral"
    BAD = "bad"
    VERY_BAD = "very bad"

    @property
    def level(self) -> int:
        """Return the integer level of the answer (2 to -2)."""
        return SWB_LEVELS[self]


SWB_LEVELS = {
    SwbAnswer.VERY_GOOD: 2,
    SwbAnswer.GOOD: 1,
    SwbAnswer.NEUTRAL: 0,
    SwbAnswer.BAD: -1,
    SwbAnswer.VERY_BAD: -2,
}


class RecordType(StrEnum):
    """Event log record tags."""

    HEADER = "HDR"
    DECISION = "DEC"
    PAYOFF = "PAY"
    SWB = "SWB"
    REWIRING = "REW"
    EDGES = "EDG"
    PAYOUT = "OUT"


class Verdict(StrEnum):
    """Replication check outcomes."""

    PASS = "PASS"
    FAIL = "FAIL"


class ExitCode:
    """Process exit codes of the command line."""

    SUCCESS = 0
    INPUT_ERROR = 1
    VERDICT_FAILURE = 2
    IO_ERROR = 3
