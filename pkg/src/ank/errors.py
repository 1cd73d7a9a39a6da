"""
Exceptions raised by ank.

Every error derives from ``AnkError``. The ones describing bad values also
derive from ``ValueError`` so plain ``except ValueError`` callers keep working.
The CLI maps ``ResourceLimitError`` to exit status 2 and everything else to 1.
"""

from typing import Optional


class AnkError(Exception):
    """Base class for all ank errors."""


class ValueOutOfRange(AnkError, ValueError):
    """An integer does not fit the requested width (or the width is invalid)."""


class WidthMismatch(AnkError, ValueError):
    """Two values that must share a width do not."""


class ValidationError(AnkError, ValueError):
    """A value violates a named invariant.

    Parameters
    ----------
    message:
        Human-readable description.
    invariant:
        Short name of the violated invariant (e.g. ``'bijection'``).
    """

    def __init__(self, message: str, invariant: str = "unspecified"):
        super().__init__(message)
        self.invariant = invariant

    def __str__(self):
        return f"{self.args[0]} [invariant: {self.invariant}]"


class InvalidPermutation(ValidationError):
    pass


class InvalidGrouping(ValidationError):
    pass


class InvalidShiftParams(ValidationError):
    pass


class ShrinkPolicyUnsupported(ValidationError):
    pass


class ParseError(AnkError, ValueError):
    """Malformed text; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message)
        self.position = position

    def __str__(self):
        if self.position is None:
            return self.args[0]
        return f"{self.args[0]} (at position {self.position})"


class MalformedTrajectory(AnkError):
    """A Trajectory's stored states disagree with its own invariants."""


class ResourceLimitError(AnkError):
    """A configured memory or step budget would be exceeded."""


class WidthTooLarge(ResourceLimitError):
    pass


class StepBudgetExceeded(ResourceLimitError):
    """Iteration hit a caller-imposed step cutoff before a repeat."""

    def __init__(self, message: str, budget: int, seen: int):
        super().__init__(message)
        self.budget = budget
        self.seen = seen
