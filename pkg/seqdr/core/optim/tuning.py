"""
Penalty level selection.

Default penalties follow the rate c * sqrt(log(dim) / n). An optional grid of
constants c can be scored on a holdout quarter of the stage subsample.

Dependencies: numpy
System role: Lambda choice for each nuisance stage
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from seqdr.core.exceptions import InvalidArgumentError
from seqdr.core.losses.problem import LossProblem
from seqdr.core.optim.models import SolverConfig
from seqdr.core.optim.solver import solve

HOLDOUT_EVERY = 4


def lambda_from_theory(n_subsample: int, dim: float, scale_c: float) -> float:
    """
    Penalty level scale_c * sqrt(log(dim) / n_subsample).

    Args:
        n_subsample: Rows in the stage subsample (at least 2)
        dim: Coefficient dimension (at least 2)
        scale_c: Positive constant

    Returns:
        float: Lambda
    """
    if n_subsample < 2:
        raise InvalidArgumentError("n_subsample must be at least 2", field="n_subsample")
    if dim < 2:
        raise InvalidArgumentError("dim must be at least 2", field="dim")
    if scale_c <= 0:
        raise InvalidArgumentError("scale_c must be positive", field="scale_c")
    return scale_c * math.sqrt(math.log(dim) / n_subsample)


@dataclass(frozen=True)
class HoldoutSelection:
    """Chosen constant, the lambda it implies on the full subsample, and the
    holdout loss of every candidate."""

    scale: float
    lam: float
    holdout_losses: tuple[float, ...]


def select_scale_by_holdout(
    problem: LossProblem,
    grid: Sequence[float],
    config: SolverConfig,
) -> HoldoutSelection:
    """
    Pick the constant c whose fit on 3/4 of the rows has the smallest
    unpenalized loss on the remaining quarter.

    Every fourth row (positions 3, 7, ...) is held out. Subsample membership
    is random, so position carries no information. Ties go to the earlier
    grid entry.

    Args:
        problem: Full stage problem
        grid: Candidate constants
        config: Solver settings shared by all candidate fits

    Returns:
        HoldoutSelection: Winning constant and its full-subsample lambda
    """
    if not grid:
        raise InvalidArgumentError("lambda grid is empty", field="lambda_grid")
    positions = np.arange(problem.n_rows)
    held = positions % HOLDOUT_EVERY == HOLDOUT_EVERY - 1
    train, holdout = problem.subset(positions[~held]), problem.subset(positions[held])
    if holdout.n_rows == 0 or train.n_rows < 2:
        raise InvalidArgumentError(
            "Subsample too small for holdout selection",
            field="lambda_grid",
            details={"rows": problem.n_rows},
        )

    losses = []
    for scale in grid:
        lam = lambda_from_theory(train.n_rows, max(problem.dim, 2), scale)
        fit = solve(train, config.model_copy(update={"lam": lam, "warm_start": None}))
        losses.append(holdout.value(fit.coef))
    best = int(np.argmin(np.where(np.isfinite(losses), losses, np.inf)))
    scale = float(grid[best])
    return HoldoutSelection(
        scale=scale,
        lam=lambda_from_theory(problem.n_rows, max(problem.dim, 2), scale),
        holdout_losses=tuple(float(value) for value in losses),
    )
