"""Exception hierarchy shared across the package.

The CLI maps these onto distinct exit codes, so library code should raise
the most specific class that applies.
"""

from __future__ import annotations


class KsbaError(Exception):
    """Base class for all errors raised by this package."""


class InputParseError(KsbaError):
    """Malformed textual input (expressions, JSON payloads, rationals)."""


class PreconditionError(KsbaError):
    """A documented precondition of an operation was violated."""


class AuditFailure(KsbaError):
    """A stability audit found a non-log-canonical germ or a non-ample log divisor."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
