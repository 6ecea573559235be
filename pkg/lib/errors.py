"""
Exception hierarchy for carpetcalc.

Every error carries the process exit code the CLI reports for it, the way an
API error carries its HTTP status.
"""


class CarpetCalcError(Exception):
    """Base error with an exit code and a human-readable detail."""

    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class UsageError(CarpetCalcError, ValueError):
    """Invalid parameters supplied by the caller."""

    exit_code = 2


class InvariantViolation(CarpetCalcError):
    """An oracle or closed-form cross-check disagreed with a computed value."""

    exit_code = 3


class Contradiction(InvariantViolation):
    """A long exact sequence problem has no feasible assignment."""
