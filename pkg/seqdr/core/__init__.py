"""
Core estimation logic.

Contains the exception hierarchy and the numerical subpackages: shared types
and the score (model_core), nuisance losses, the L1 solver (optim) and the
cross-fitted estimator (pipeline).
"""

from seqdr.core.exceptions import (
    ConvergenceError,
    DataFormatError,
    DegenerateSubsampleError,
    InvalidArgumentError,
    InvalidScenarioError,
    InvalidStartError,
    NumericalDegeneracyError,
    SeqDRError,
    SizingError,
    StudyFailureError,
    UsageError,
)

__all__ = [
    "ConvergenceError",
    "DataFormatError",
    "DegenerateSubsampleError",
    "InvalidArgumentError",
    "InvalidScenarioError",
    "InvalidStartError",
    "NumericalDegeneracyError",
    "SeqDRError",
    "SizingError",
    "StudyFailureError",
    "UsageError",
]
