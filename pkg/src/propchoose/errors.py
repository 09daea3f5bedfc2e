"""Exception types shared across the package."""

from __future__ import annotations


class InvalidArgument(ValueError):
    """A precondition of an operation does not hold."""


class ResourceLimit(RuntimeError):
    """An enumeration guard or time budget was exceeded."""


class InternalError(RuntimeError):
    """A step that a proof guarantees to succeed did not.

    ``step`` names the proof step so that the failing instance can be
    inspected as a potential counterexample.
    """

    def __init__(self, step: str, message: str = "", payload=None):
        self.step = step
        self.payload = payload
        super().__init__(f"{step}: {message}" if message else step)
