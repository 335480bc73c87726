"""Exact f-vector and short cubical h-vector toolkit for cubical polytopes."""

from cubefv.errors import CubefvError, InvalidInputError, NonIntegralError, ConsistencyError

__version__ = "0.1.0"

__all__ = [
    "CubefvError",
    "InvalidInputError",
    "NonIntegralError",
    "ConsistencyError",
]
