"""
Exception types raised by the numeric core.

The orchestration layer (runner.py) turns these into ToolResult failures, so the
CLI never sees a traceback for a bad parameter or a stalled Newton iteration.
"""

from __future__ import annotations

from typing import Any, Optional


class GlucomemError(Exception):
    """Base class for every error raised by glucomem."""


class DomainError(GlucomemError, ValueError):
    """An argument lies outside the domain of the operation (message names the field)."""


class ContractError(GlucomemError, ValueError):
    """The caller broke an operation's contract (shapes, names, grid counts)."""


class ConfigError(GlucomemError):
    """A run configuration could not be parsed or validated."""

    def __init__(
        self,
        message: str,
        *,
        field: Optional[str] = None,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ) -> None:
        super().__init__(message)
        self.field = field
        self.line = line
        self.column = column


class NumericError(GlucomemError, ArithmeticError):
    """An iterative method failed. Carries the last iterate and, when available, a trace."""

    def __init__(self, message: str, *, last_iterate: Any = None, trace: Optional[list] = None) -> None:
        super().__init__(message)
        self.last_iterate = last_iterate
        self.trace = trace or []


class NewtonConvergenceError(NumericError):
    """Damped Newton ran out of iterations or damping."""


class RootFindingError(NumericError):
    """Scalar root iteration did not reach tolerance."""


class SingularMatrixError(NumericError):
    """Banded elimination hit a zero pivot."""

    def __init__(self, message: str, *, pivot: Optional[int] = None) -> None:
        super().__init__(message)
        self.pivot = pivot


class ArtifactIOError(GlucomemError):
    """An output artifact could not be written."""

    def __init__(self, message: str, *, path: Any = None) -> None:
        super().__init__(message)
        self.path = path
