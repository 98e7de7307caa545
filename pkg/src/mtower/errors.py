"""Exceptions shared across the package.

Every failure the engine can report deliberately is an :class:`MTError`;
anything else escaping is a bug. The CLI maps ``MTError`` to exit status 1
with a machine-readable error object.
"""

from __future__ import annotations


class MTError(Exception):
    """Base class for reported failures."""

    code = "error"

    def payload(self) -> dict:
        return {"code": self.code, "message": str(self)}


class DomainError(MTError):
    """A precondition on the mathematical input is violated."""

    code = "domain-error"


class InsufficientTruncation(MTError):
    """The requested quantity is not determined by the stored coefficients.

    Truncated series only know coefficients up to their truncation order;
    asking beyond it is an honest failure, never silently treated as zero.
    """

    code = "insufficient-truncation"
