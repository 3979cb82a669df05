"""
L1-penalized minimization by monotone accelerated proximal gradient.

Minimizes loss(b) + sum_j lam_j |b_j| with FISTA momentum, a backtracking line
search whose step is allowed to grow again at every iteration, a monotone
safeguard that keeps the best iterate, and adaptive restart of the momentum.
Termination is certified by the KKT violation at the accepted iterate.

Dependencies: numpy
System role: Solver behind every nuisance fit
"""

import math

import numpy as np

from seqdr.core.exceptions import InvalidArgumentError, InvalidStartError
from seqdr.core.losses.problem import LossEval, LossProblem
from seqdr.core.optim.models import SolveResult, SolverConfig
from seqdr.core.optim.prox import l1_penalty, penalty_weights, soft_threshold
from seqdr.observability import get_logger

logger = get_logger(__name__)

_MIN_STEP = 1e-20
_MAX_STEP = 1e20
_DESCENT_SLACK = 1e-12


def kkt_violation(coef: np.ndarray, gradient: np.ndarray, weights: np.ndarray) -> float:
    """
    Largest coordinatewise breach of the L1 optimality conditions.

    A zero coordinate contributes max(|grad_j| - w_j, 0); a nonzero one
    contributes |grad_j + w_j sign(coef_j)|.
    """
    at_zero = coef == 0.0
    breach = np.where(
        at_zero,
        np.maximum(np.abs(gradient) - weights, 0.0),
        np.abs(gradient + weights * np.sign(coef)),
    )
    return float(np.max(breach)) if breach.size else 0.0


def kkt_check(
    problem: LossProblem,
    coef: np.ndarray,
    lam: float,
    penalize_intercept: bool = True,
) -> float:
    """
    KKT violation of ``coef`` for ``problem`` at penalty ``lam``.

    Args:
        problem: Smooth loss
        coef: Candidate solution
        lam: L1 weight
        penalize_intercept: Whether coordinate 0 carries the penalty

    Returns:
        float: Nonnegative violation; 0 at an exact minimizer
    """
    coef = np.asarray(coef, dtype=np.float64)
    if coef.shape != (problem.dim,):
        raise InvalidArgumentError(
            f"coef has shape {coef.shape}, expected ({problem.dim},)", field="coef"
        )
    weights = penalty_weights(problem.dim, lam, penalize_intercept)
    return kkt_violation(coef, problem.evaluate(coef).gradient, weights)


def _finite(evaluation: LossEval) -> bool:
    return math.isfinite(evaluation.value) and bool(np.all(np.isfinite(evaluation.gradient)))


def _start_point(problem: LossProblem, config: SolverConfig) -> np.ndarray:
    if config.warm_start is None:
        return np.zeros(problem.dim)
    start = np.asarray(config.warm_start, dtype=np.float64)
    if start.shape != (problem.dim,):
        raise InvalidArgumentError(
            f"warm_start has length {start.shape[0]}, expected {problem.dim}",
            field="warm_start",
        )
    return start


def solve(problem: LossProblem, config: SolverConfig) -> SolveResult:
    """
    Minimize the penalized loss of ``problem``.

    Args:
        problem: Smooth convex loss with an analytic gradient
        config: Penalty, tolerances, step policy and optional warm start

    Returns:
        SolveResult: Final iterate with its certificate; ``converged`` is
        False when ``max_iter`` is reached or the line search stalls

    Raises:
        InvalidStartError: If the loss is not finite at the start point
    """
    weights = penalty_weights(problem.dim, config.lam, config.penalize_intercept)
    x = _start_point(problem, config)
    current = problem.evaluate(x)
    if not _finite(current):
        raise InvalidStartError(
            f"Loss {problem.kind.value} is not finite at the start point",
            {"kind": problem.kind.value, "value": current.value},
        )

    objective = current.value + l1_penalty(x, weights)
    objective_path = [objective]
    saturated = current.saturated
    violation = kkt_violation(x, current.gradient, weights)
    iterations = 0

    y, at_y = x, current
    momentum = 1.0
    step = config.init_step
    stalled = False

    while violation > config.tol and iterations < config.max_iter:
        if iterations:
            step = min(step / config.backtrack_shrink, _MAX_STEP)
        iterations += 1
        while True:
            z = soft_threshold(y - step * at_y.gradient, step * weights)
            at_z = problem.evaluate(z)
            move = z - y
            bound = at_y.value + at_y.gradient @ move + (move @ move) / (2.0 * step)
            if math.isfinite(at_z.value) and at_z.value <= bound + _DESCENT_SLACK * (
                1.0 + abs(at_y.value)
            ):
                break
            step *= config.backtrack_shrink
            if step < _MIN_STEP:
                stalled = True
                break
        if stalled:
            break

        candidate = at_z.value + l1_penalty(z, weights)
        next_momentum = (1.0 + math.sqrt(1.0 + 4.0 * momentum * momentum)) / 2.0
        # A plain proximal step from the best iterate is accepted up to rounding
        rounding = _DESCENT_SLACK * (1.0 + abs(objective)) if y is x else 0.0
        if candidate <= objective + rounding:
            previous = x
            x, current, objective = z, at_z, candidate
            saturated = saturated or at_z.saturated
            if (y - z) @ (z - previous) > 0.0:
                momentum = 1.0
                y, at_y = x, current
            else:
                y = z + ((momentum - 1.0) / next_momentum) * (z - previous)
                momentum = next_momentum
                at_y = problem.evaluate(y)
                if not _finite(at_y):
                    momentum = 1.0
                    y, at_y = x, current
        else:
            # Rejected step: restart from the best iterate
            momentum = 1.0
            y, at_y = x, current
        objective_path.append(objective)
        violation = kkt_violation(x, current.gradient, weights)

    converged = violation <= config.tol
    if not converged:
        logger.debug(
            "solve_not_converged",
            kind=problem.kind.value,
            iterations=iterations,
            kkt=violation,
            stalled=stalled,
        )
    return SolveResult(
        coef=x,
        iterations=iterations,
        kkt_violation=violation,
        converged=converged,
        saturated=saturated,
        lam=config.lam,
        objective_path=np.asarray(objective_path),
    )
