"""Exception types shared across the package."""

from __future__ import annotations


class SullivanError(Exception):
    """Base class for all package-specific errors."""


class InputError(SullivanError):
    """A model definition is structurally invalid (bad degrees, non-minimal
    differential, d Leibniz failure, d*d != 0, and so on)."""


class ParseError(InputError):
    """A model file or polynomial expression could not be parsed.

    Carries enough position information to point the user at the offending
    text.
    """

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class TruncationError(SullivanError):
    """A computation needed data outside the truncation bounds it was given."""


class InternalError(SullivanError):
    """An internal consistency check failed; indicates a bug, not bad input."""
