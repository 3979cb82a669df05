"""
L1-penalized proximal gradient solver, KKT certificate and penalty selection.
"""

from seqdr.core.optim.models import SolveResult, SolverConfig
from seqdr.core.optim.prox import penalty_weights, soft_threshold
from seqdr.core.optim.solver import kkt_check, kkt_violation, solve
from seqdr.core.optim.tuning import HoldoutSelection, lambda_from_theory, select_scale_by_holdout

__all__ = [
    "HoldoutSelection",
    "SolveResult",
    "SolverConfig",
    "kkt_check",
    "kkt_violation",
    "lambda_from_theory",
    "penalty_weights",
    "select_scale_by_holdout",
    "soft_threshold",
    "solve",
]
