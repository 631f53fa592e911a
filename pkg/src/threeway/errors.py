"""Exception types shared across the package."""

from __future__ import annotations


class ThreeWayError(Exception):
    """Base class for every error raised by this package."""


class TableParseError(ThreeWayError):
    """Malformed ``.itab`` source; carries the offending line and column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            message = f"{where}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class UnknownIdError(ThreeWayError):
    """An object or attribute identifier is not part of the table."""


class ResolutionError(ThreeWayError):
    """A class-specific cell could not be resolved."""


class UnresolvedReferenceError(ResolutionError):
    """The reference cell of a class-specific cell is not a known value."""


class EmptyResolutionError(ResolutionError):
    """No peer object supplies a known value for a class-specific cell."""


class GuardExceededError(ThreeWayError):
    """An enumeration would exceed its configured size cap."""


class IncompleteTableError(ThreeWayError):
    """An operation that requires complete information met an incomplete cell."""


class DomainInferenceWarning(UserWarning):
    """A column domain was inferred from the observed tokens."""
