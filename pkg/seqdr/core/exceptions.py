"""
Exception hierarchy for the seqdr package.

Provides layered exception structure for domain-specific errors.
All exceptions include context for logging and debugging.

Dependencies: None (pure domain layer)
System role: Centralized exception handling across the package
"""

from typing import Any


class SeqDRError(Exception):
    """Base exception for all seqdr errors."""

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        """
        Initialize base exception with message and optional context.

        Args:
            message: Human-readable error message
            details: Optional dictionary of additional context for debugging
        """
        self.message = message
        self.details = details or {}
        super().__init__(message)

    def __str__(self) -> str:
        """Return string representation including details."""
        if self.details:
            return f"{self.message} | Details: {self.details}"
        return self.message


class InvalidArgumentError(SeqDRError):
    """Raised when a function argument violates its precondition."""

    def __init__(
        self,
        message: str,
        field: str | None = None,
        details: dict[str, Any] | None = None,
    ) -> None:
        """
        Initialize invalid argument error.

        Args:
            message: Error message
            field: Name of the offending argument
            details: Additional context
        """
        details = details or {}
        if field:
            details["field"] = field
        super().__init__(message, details)


class DataFormatError(SeqDRError):
    """Raised when a dataset violates its invariants or a CSV row is malformed."""

    def __init__(
        self,
        message: str,
        line: int | None = None,
        column: str | None = None,
        details: dict[str, Any] | None = None,
    ) -> None:
        """
        Initialize data format error.

        Args:
            message: Error message
            line: 1-based line number in the source file (header is line 1)
            column: Offending column name
            details: Additional context
        """
        details = details or {}
        if line is not None:
            details["line"] = line
        if column:
            details["column"] = column
        super().__init__(message, details)


class NumericalDegeneracyError(SeqDRError):
    """Raised when the score would divide by a propensity of exactly zero."""

    def __init__(self, observation: int, stage: str, details: dict[str, Any] | None = None) -> None:
        """
        Initialize numerical degeneracy error.

        Args:
            observation: Index of the offending observation
            stage: Which propensity vanished ("time1" or "time2")
            details: Additional context
        """
        details = details or {}
        details.update({"observation": observation, "stage": stage})
        super().__init__(
            f"Propensity at {stage} is exactly 0 for observation {observation}",
            details,
        )


class InvalidStartError(SeqDRError):
    """Raised when a solve starts from a point with a non-finite loss."""


class SizingError(SeqDRError):
    """Raised when a sample is too small for the requested cross-fitting plan."""

    def __init__(self, n: int, k_folds: int, minimum: int) -> None:
        """
        Initialize sizing error.

        Args:
            n: Sample size supplied
            k_folds: Number of folds requested
            minimum: Smallest admissible sample size
        """
        super().__init__(
            f"Need at least {minimum} observations for {k_folds} folds, got {n}",
            {"n": n, "k_folds": k_folds, "minimum": minimum},
        )


class DegenerateSubsampleError(SeqDRError):
    """Raised when a nuisance subsample has no rows carrying the needed treatment."""

    def __init__(self, fold: int, stage: str, counts: dict[str, int]) -> None:
        """
        Initialize degenerate subsample error.

        Args:
            fold: Fold index whose complement was being fit
            stage: Nuisance stage name (gamma, delta, alpha, beta)
            counts: Row counts describing the subsample
        """
        super().__init__(
            f"Subsample for stage {stage} in fold {fold} has no relevant treated rows",
            {"fold": fold, "stage": stage, "counts": counts},
        )


class ConvergenceError(SeqDRError):
    """Raised in strict mode, or by population solves, when a solve did not converge."""

    def __init__(self, stage: str, kkt_violation: float, details: dict[str, Any] | None = None) -> None:
        """
        Initialize convergence error.

        Args:
            stage: Stage label of the failed solve
            kkt_violation: KKT violation at the returned iterate
            details: Additional context
        """
        details = details or {}
        details.update({"stage": stage, "kkt_violation": kkt_violation})
        super().__init__(f"Solver did not converge for stage {stage}", details)


class InvalidScenarioError(SeqDRError):
    """Raised when a simulation scenario violates its own rules."""


class StudyFailureError(SeqDRError):
    """Raised when too many Monte Carlo replications fail."""


class UsageError(SeqDRError):
    """Raised on malformed command-line usage."""
