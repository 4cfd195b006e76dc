"""Exception hierarchy for friezelab.

Every library error derives from ``FriezeLabError`` and from the builtin exception a
caller would naturally catch, so ``except ValueError`` keeps working.
"""

from typing import Any, Optional


class FriezeLabError(Exception):
    """Base class for domain errors raised by friezelab."""


class ArityMismatch(FriezeLabError, ValueError):
    """Two Laurent polynomials live in rings with different variables."""


class NotDivisible(FriezeLabError, ArithmeticError):
    """No exact Laurent quotient exists."""


class ZeroSubstitution(FriezeLabError, ZeroDivisionError):
    """A variable occurring with a negative exponent was evaluated at zero."""


class RecurrenceDivisionError(FriezeLabError, ZeroDivisionError):
    """A recurrence tried to divide by zero at a specific cell."""

    def __init__(self, message: str, position: Optional[Any] = None):
        super().__init__(message)
        self.position = position


class InvalidTriangulation(FriezeLabError, ValueError):
    """Diagonal set is not a triangulation of the polygon."""


class GraphError(FriezeLabError, ValueError):
    """Graph operation applied outside its preconditions."""


class LatticeError(FriezeLabError, ValueError):
    """Lattice vector or superbase violates its invariants."""
