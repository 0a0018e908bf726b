"""Exception types.

Every error subclasses a builtin so callers can catch the builtin family
(``ValueError`` for bad input, ``RuntimeError`` for numerical failure).
The CLI maps these onto its exit codes.
"""

from __future__ import annotations


class UnknownDesignError(ValueError):
    """Requested design order has no closed-form catalog entry."""


class PointFileError(ValueError):
    """Malformed or off-sphere point file."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class SolverError(RuntimeError):
    """The design solver did not converge on any restart."""

    def __init__(self, message: str, best_residual: float):
        super().__init__(message)
        self.best_residual = best_residual


class OptimizationError(RuntimeError):
    """Every orientation-optimizer restart was discarded."""


class KindMismatchError(ValueError):
    """Charge body evaluated in a mass field, or the reverse."""


class OverlapError(ValueError):
    """Coincident point elements or overlapping spheres."""


class ConfigError(ValueError):
    """Scenario configuration failed validation."""

    def __init__(self, message: str, keys: list[str] | None = None):
        super().__init__(message)
        self.keys = list(keys or [])
