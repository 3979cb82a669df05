"""
Baseline nuisance losses.

The conventional sequential fits the moment-targeted losses are contrasted
with: logistic likelihoods for both propensities, least squares for the
time-2 outcome on doubly treated rows, and least squares of the fitted
time-2 regression on S1 for the time-1 outcome.

Dependencies: numpy
System role: Loss builders for the baseline estimator family
"""

from collections.abc import Mapping

import numpy as np

from seqdr.core.exceptions import InvalidArgumentError
from seqdr.core.losses.problem import LossEval, LossKind, LossProblem
from seqdr.core.model_core.types import Dataset

BASELINE_KINDS = (
    LossKind.BASE_PS1,
    LossKind.BASE_PS2,
    LossKind.BASE_OR2,
    LossKind.BASE_OR1,
)


def baseline_problem(
    kind: LossKind,
    rows: Dataset,
    alpha_hat: np.ndarray | None = None,
) -> LossProblem:
    """
    Build a baseline loss over ``rows``.

    Args:
        kind: One of the Base_* kinds
        rows: Subsample the loss averages over
        alpha_hat: Fitted time-2 outcome coefficients (Base_or1 only)

    Returns:
        LossProblem: Ready-to-solve problem

    Raises:
        InvalidArgumentError: On a non-baseline kind or a missing/misshapen alpha_hat
    """
    if kind is LossKind.BASE_PS1:
        return LossProblem(kind=kind, design=rows.s1, response=rows.a1, weights=np.ones(rows.n))
    if kind is LossKind.BASE_PS2:
        return LossProblem(kind=kind, design=rows.s_bar, response=rows.a2, weights=rows.a1.copy())
    if kind is LossKind.BASE_OR2:
        return LossProblem(
            kind=kind, design=rows.s_bar, response=rows.y, weights=rows.a1 * rows.a2
        )
    if kind is LossKind.BASE_OR1:
        if alpha_hat is None:
            raise InvalidArgumentError("Base_or1 needs the fitted alpha", field="alpha")
        alpha_hat = np.asarray(alpha_hat, dtype=np.float64)
        if alpha_hat.shape != (rows.d,) or not np.all(np.isfinite(alpha_hat)):
            raise InvalidArgumentError(
                f"alpha has shape {alpha_hat.shape}, expected ({rows.d},)", field="alpha"
            )
        return LossProblem(
            kind=kind,
            design=rows.s1,
            response=rows.s_bar @ alpha_hat,
            weights=rows.a1.copy(),
            frozen={"alpha": alpha_hat},
        )
    raise InvalidArgumentError(f"{kind.value} is not a baseline loss", field="kind")


def eval_baseline(
    kind: LossKind,
    coef: np.ndarray,
    frozen: Mapping[str, np.ndarray],
    rows: Dataset,
) -> LossEval:
    """Evaluate a baseline loss at ``coef``; ``frozen`` carries alpha for Base_or1."""
    return baseline_problem(kind, rows, alpha_hat=frozen.get("alpha")).evaluate(coef)
