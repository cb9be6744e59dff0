"""Exception types raised across the package.

Plain `ValueError`/`RuntimeError` subclasses, so callers that only care about the broad category can keep
catching the builtin types.
"""

from typing import Optional


class InputError(ValueError):
    """Malformed user input (non-finite values, duplicate points, bad rows, dimension mismatch)."""

    def __init__(self, message: str, row: Optional[int] = None) -> None:
        """Initialize with a message and, for file ingestion errors, the 1-based offending row."""
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
        self.row = row


class DimensionMismatchError(InputError):
    """The functional's gradient and the point cloud disagree on the ambient dimension."""


class ContractViolationError(ValueError):
    """A caller broke a documented precondition of an operation."""


class InvariantViolationError(RuntimeError):
    """An internal invariant of the sweep failed. Indicates a bug, never bad input."""
