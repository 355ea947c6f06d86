"""Shared exception types."""

from __future__ import annotations


class FormatError(ValueError):
    """Malformed instance, matching, or graph text."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class PreconditionError(ValueError):
    """An operation was called outside its documented preconditions."""


class InternalCheckError(RuntimeError):
    """A guaranteed property failed to hold; indicates a bug, not bad input."""
