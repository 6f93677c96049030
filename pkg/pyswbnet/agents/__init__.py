"""Calibrated behavioural agents."""

from ._policy import (
    TieObservation,
    connect_probability,
    decide_cooperation,
    decide_tie,
    rate_swb,
    tie_decisions,
    wealth_quintile,
)

__all__ = [
    "TieObservation",
    "connect_probability",
    "decide_cooperation",
    "decide_tie",
    "rate_swb",
    "tie_decisions",
    "wealth_quintile",
]
