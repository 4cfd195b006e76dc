"""Utility modules for friezelab."""

from .config import Config
from .errors import (
    ArityMismatch,
    FriezeLabError,
    GraphError,
    InvalidTriangulation,
    LatticeError,
    NotDivisible,
    RecurrenceDivisionError,
    ZeroSubstitution,
)

__all__ = [
    "Config",
    "FriezeLabError",
    "ArityMismatch",
    "NotDivisible",
    "ZeroSubstitution",
    "RecurrenceDivisionError",
    "InvalidTriangulation",
    "GraphError",
    "LatticeError",
]
