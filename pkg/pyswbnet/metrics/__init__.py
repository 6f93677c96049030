"""Network metrics."""

from ._network import (
    CentralityVector,
    cooperator_triangle_fraction,
    eigenvector_centrality,
    gini,
    louvain,
    mean_centrality_by_action,
    modularity,
    transitivity,
)

__all__ = [
    "CentralityVector",
    "cooperator_triangle_fraction",
    "eigenvector_centrality",
    "gini",
    "louvain",
    "mean_centrality_by_action",
    "modularity",
    "transitivity",
]
