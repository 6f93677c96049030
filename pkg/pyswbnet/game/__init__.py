"""Game engine of the networked public goods game."""

from ._engine import GameEngine, TieDecider, payout
from ._session import replay_session, run_session
from ._state import SessionState, init_session

__all__ = [
    "GameEngine",
    "SessionState",
    "TieDecider",
    "init_session",
    "payout",
    "replay_session",
    "run_session",
]
