"""Exception types raised by the skein engine."""

from __future__ import annotations


class SkeinError(Exception):
    """Base class for all engine errors."""


class CompositionError(SkeinError, ValueError):
    """Two diagrams whose boundary words do not match were stacked."""


class DiagramError(SkeinError, ValueError):
    """A sliced diagram is malformed (orientation or width mismatch)."""


class PDValidationError(SkeinError, ValueError):
    """A planar-diagram code is malformed."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ZeroHomSpace(SkeinError, ValueError):
    """The requested morphism space has no matchings."""


class DegeneratePairing(SkeinError, ArithmeticError):
    """The closure pairing on a morphism space turned out to be singular."""


class NonIntegralExpansion(SkeinError, ArithmeticError):
    """A coordinate left the coefficient ring Z[q, q^-1, t, t^-1, 1/(q - q^-1)]."""


class InvariantViolation(SkeinError, AssertionError):
    """A structural property that must hold (triangularity, t-freeness, ...) failed."""
