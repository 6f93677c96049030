"""Undirected dynamic network over dense participant indices."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator
from itertools import combinations
from math import comb

import networkx as nx
import numpy as np

from pyswbnet.exceptions import InvalidArgument, InvalidConfig
from pyswbnet.models import EdgeSnapshot

_LOGGER = logging.getLogger(__name__)


def iter_pairs(n: int) -> Iterator[tuple[int, int]]:
    """Yield all unordered pairs (u, v), u < v, in lexicographic order."""
    return combinations(range(n), 2)


class Network:
    """Simple undirected graph on the nodes 0..n-1."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        """Create a network with `n` isolated nodes and optional edges."""
        if n < 1:
            raise InvalidArgument(f"Network needs at least one node, got {n}")
        self._graph = nx.Graph()
        self._graph.add_nodes_from(range(n))
        for u, v in edges:
            self.add_edge(u, v)

    @classmethod
    def from_snapshot(cls, n: int, snapshot: EdgeSnapshot) -> Network:
        """Rebuild a network from a captured snapshot."""
        return cls(n, snapshot.edges)

    @property
    def n(self) -> int:
        """Return the participant count."""
        return self._graph.number_of_nodes()

    @property
    def edge_count(self) -> int:
        """Return the number of edges."""
        return self._graph.number_of_edges()

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Return the edges as sorted (u, v) pairs with u < v."""
        return tuple(sorted((min(u, v), max(u, v)) for u, v in self._graph.edges))

    @property
    def graph(self) -> nx.Graph:
        """Return a read-only view of the underlying graph."""
        return self._graph.copy(as_view=True)

    def _check_node(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise InvalidArgument(f"Node {u} out of range 0..{self.n - 1}")

    def _check_pair(self, u: int, v: int) -> None:
        self._check_node(u)
        self._check_node(v)
        if u == v:
            raise InvalidArgument(f"Self-loop on node {u} is not allowed")

    def add_edge(self, u: int, v: int) -> None:
        """Connect u and v; adding an existing edge is a no-op."""
        self._check_pair(u, v)
        self._graph.add_edge(u, v)

    def remove_edge(self, u: int, v: int) -> None:
        """Disconnect u and v; removing a missing edge is a no-op."""
        self._check_pair(u, v)
        if self._graph.has_edge(u, v):
            self._graph.remove_edge(u, v)

    def has_edge(self, u: int, v: int) -> bool:
        """Return whether u and v are connected."""
        self._check_pair(u, v)
        return self._graph.has_edge(u, v)

    def neighbors(self, u: int) -> frozenset[int]:
        """Return the peers connected to u."""
        self._check_node(u)
        return frozenset(self._graph.adj[u])

    def degree(self, u: int) -> int:
        """Return the number of peers connected to u."""
        self._check_node(u)
        return len(self._graph.adj[u])

    def degrees(self) -> list[int]:
        """Return the degree of every node in index order."""
        return [len(self._graph.adj[u]) for u in range(self.n)]

    def snapshot(self, round_number: int) -> EdgeSnapshot:
        """Capture the current edges."""
        return EdgeSnapshot(round=round_number, edges=self.edges)

    def copy(self) -> Network:
        """Return an independent copy."""
        return Network(self.n, self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Network):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __repr__(self) -> str:
        return f"Network(n={self.n}, edges={self.edge_count})"


def random_network(n: int, density: float, rng: np.random.Generator) -> Network:
    """Draw an Erdős–Rényi network.

    Every pair is an edge with probability `density`.
    """
    if n < 2:
        raise InvalidConfig("n_players", f"need at least 2 players, got {n}")
    if not 0.0 <= density <= 1.0:
        raise InvalidConfig("initial_density", f"{density} is not a probability")

    draws = rng.random(comb(n, 2))
    edges = [pair for pair, draw in zip(iter_pairs(n), draws) if draw < density]
    _LOGGER.debug("Random network with %s nodes and %s edges", n, len(edges))
    return Network(n, edges)
