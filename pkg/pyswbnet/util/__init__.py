"""Init for util"""
from ._format import FLOAT_FORMAT, format_float
from ._seeding import derive_seed, make_rng

__all__ = [
    "FLOAT_FORMAT",
    "derive_seed",
    "format_float",
    "make_rng",
]
