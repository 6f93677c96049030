"""Dynamic network primitives."""

from ._network import Network, iter_pairs, random_network

__all__ = ["Network", "iter_pairs", "random_network"]
