"""Models for pyswbnet."""

from ._config import (
    DEFAULT_SWB_MAPPING,
    MEASURED_CONNECT_PROB,
    MEASURED_COOP_RATE,
    AgentPolicy,
    CalibrationTable,
    GameParameters,
    RunConfig,
    SessionConfig,
)
from ._game import EdgeSnapshot, PeerView, RewiringEvent, TieContext
from ._records import (
    DecisionRecord,
    EdgesRecord,
    EventLog,
    HeaderRecord,
    LogRecord,
    PayoffRecord,
    PayoutRecord,
    RewiringRecord,
    SwbRecord,
)
from ._results import (
    FindingVerdict,
    LogisticFit,
    MediationReport,
    MediationResult,
    Partition,
    PermutationResult,
    RunManifest,
    SessionEntry,
    WelchResult,
)

__all__ = [
    "DEFAULT_SWB_MAPPING",
    "MEASURED_CONNECT_PROB",
    "MEASURED_COOP_RATE",
    "AgentPolicy",
    "CalibrationTable",
    "DecisionRecord",
    "EdgeSnapshot",
    "EdgesRecord",
    "EventLog",
    "FindingVerdict",
    "GameParameters",
    "HeaderRecord",
    "LogRecord",
    "LogisticFit",
    "MediationReport",
    "MediationResult",
    "Partition",
    "PayoffRecord",
    "PayoutRecord",
    "PeerView",
    "PermutationResult",
    "RewiringEvent",
    "RewiringRecord",
    "RunConfig",
    "RunManifest",
    "SessionConfig",
    "SessionEntry",
    "SwbRecord",
    "TieContext",
    "WelchResult",
]
