"""
Exception types raised across the sorting library and its harness.
"""

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from src.schemas.sorting import Verdict


class ContractViolation(ValueError):
    """A caller broke an operation's precondition (short segment, small buffer, ...)."""


class VerificationError(RuntimeError):
    """
    A sorting run produced output that failed verification.

    Attributes:
        verdict: The failed verdict listing every violated property.
    """

    def __init__(self, message: str, verdict: "Verdict") -> None:
        super().__init__(message)
        self.verdict = verdict

    def __reduce__(self):  # type: ignore[no-untyped-def]
        return self.__class__, (str(self), self.verdict)
