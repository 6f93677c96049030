"""Initialize the module."""

from .game import GameEngine, SessionState, init_session, replay_session, run_session
from .harness import analyze, mediate_cmd, replicate, simulate
from .network import Network, random_network

__all__ = [
    "GameEngine",
    "Network",
    "SessionState",
    "analyze",
    "init_session",
    "mediate_cmd",
    "random_network",
    "replay_session",
    "replicate",
    "run_session",
    "simulate",
]
