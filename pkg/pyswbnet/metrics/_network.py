"""Network statistics computed per round."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from math import comb

import networkx as nx
import numpy as np
import numpy.typing as npt

from pyswbnet.const import Action
from pyswbnet.exceptions import InvalidArgument, UndefinedInput
from pyswbnet.models import Partition
from pyswbnet.network import Network

_LOGGER = logging.getLogger(__name__)

type CentralityVector = npt.NDArray[np.float64]

EIGENVECTOR_TOLERANCE = 1e-12
EIGENVECTOR_MAX_ITERATIONS = 10_000


def transitivity(network: Network) -> float:
    """Return 3 x triangles / connected triples, 0 when there are no triples."""
    return float(nx.transitivity(network.graph))


def louvain(network: Network, seed: int) -> Partition:
    """Detect communities by Louvain modularity optimization at resolution 1.

    Community ids are numbered by their smallest member.
    """
    if network.edge_count == 0:
        return Partition(membership=tuple(range(network.n)))
    communities = nx.community.louvain_communities(
        network.graph, resolution=1, seed=seed
    )
    membership = [0] * network.n
    for community_id, members in enumerate(sorted(communities, key=min)):
        for node in members:
            membership[node] = community_id
    return Partition(membership=tuple(membership))


def modularity(network: Network, partition: Partition) -> float:
    """Return Newman's modularity Q of a partition."""
    if network.edge_count == 0:
        raise UndefinedInput("Modularity is undefined on a graph without edges")
    if len(partition.membership) != network.n:
        raise InvalidArgument(
            f"Partition covers {len(partition.membership)} nodes, "
            f"network has {network.n}"
        )
    return float(
        nx.community.modularity(network.graph, partition.communities(), resolution=1)
    )


def eigenvector_centrality(network: Network) -> CentralityVector:
    """Return max-normalized eigenvector centrality by power iteration.

    The iteration runs on A + I so bipartite graphs converge too; isolated
    nodes start (and stay) at 0.
    """
    n = network.n
    if network.edge_count == 0:
        return np.zeros(n)
    adjacency = nx.to_numpy_array(network.graph, nodelist=range(n), dtype=float)
    shifted = adjacency + np.eye(n)
    scores = (adjacency.sum(axis=1) > 0).astype(float)
    for iteration in range(1, EIGENVECTOR_MAX_ITERATIONS + 1):
        following = shifted @ scores
        following /= following.max()
        change = float(np.max(np.abs(following - scores)))
        scores = following
        if change < EIGENVECTOR_TOLERANCE:
            break
    else:
        _LOGGER.warning(
            "Eigenvector centrality stopped after %s iterations (change %s)",
            iteration,
            change,
        )
    return scores


def gini(values: Sequence[float] | npt.ArrayLike) -> float:
    """Return the Gini coefficient sum |xi - xj| / (2 n^2 mean)."""
    x = np.asarray(values, dtype=float)
    if x.size == 0:
        raise UndefinedInput("Gini coefficient of an empty sample is undefined")
    if np.any(x < 0):
        raise InvalidArgument("Gini coefficient needs non-negative values")
    mean = x.mean()
    if mean == 0:
        raise UndefinedInput("Gini coefficient of all-zero values is undefined")
    return float(np.abs(x[:, None] - x[None, :]).sum() / (2 * x.size**2 * mean))


def cooperator_triangle_fraction(network: Network, actions: Sequence[Action]) -> float:
    """Return the share of all possible triads that are all-cooperator triangles."""
    n = network.n
    if n < 3:
        raise UndefinedInput(f"Triangle fraction needs at least 3 nodes, got {n}")
    cooperators = [node for node in range(n) if actions[node] == Action.COOPERATE]
    triangles = sum(nx.triangles(network.graph.subgraph(cooperators)).values()) // 3
    return triangles / comb(n, 3)


def mean_centrality_by_action(
    centrality: CentralityVector | Sequence[float], actions: Sequence[Action]
) -> tuple[float | None, float | None]:
    """Return the mean centrality of cooperators and of defectors.

    A group with no members is reported as None.
    """
    scores = np.asarray(centrality, dtype=float)
    chose_c = np.array([action == Action.COOPERATE for action in actions], dtype=bool)
    if scores.shape != chose_c.shape:
        raise InvalidArgument(
            f"Got {scores.size} centrality scores for {chose_c.size} actions"
        )
    cooperators = float(scores[chose_c].mean()) if chose_c.any() else None
    defectors = float(scores[~chose_c].mean()) if (~chose_c).any() else None
    return cooperators, defectors
