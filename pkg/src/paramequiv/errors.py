"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class ParamEquivError(Exception):
    """Base class for all errors raised by :mod:`paramequiv`."""


class ResourceLimitError(ParamEquivError):
    """A configured ceiling (field order, term count, evaluation budget) was hit."""


class DimensionError(ParamEquivError, ValueError):
    """Matrix shapes do not fit the requested operation."""


class ArityMismatchError(ParamEquivError, ValueError):
    """Two circuits that must be compared have different input/output arities."""


class CircuitValidationError(ParamEquivError, ValueError):
    """A circuit failed validation; ``violations`` lists every problem found."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ParseError(ParamEquivError, ValueError):
    """Syntax error in a scalar expression or circuit file."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{line}:{col}: {message}"
        super().__init__(message)
