"""Statistical inference at the network level."""

from ._inference import (
    ClusteredSample,
    logistic_fit,
    mediate,
    permutation_test,
    welch_t,
)

__all__ = [
    "ClusteredSample",
    "logistic_fit",
    "mediate",
    "permutation_test",
    "welch_t",
]
