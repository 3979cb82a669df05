"""
Test oracles independent of the package's own solver.

Provides: random datasets, central finite differences, a dense damped-Newton
reference minimizer and a separable quadratic problem with a closed-form
lasso solution.
Dependencies: numpy, scipy
"""

from collections.abc import Callable

import numpy as np
from scipy.special import expit

from seqdr.core.losses import LossFamily, LossKind, LossProblem
from seqdr.core.model_core.types import Dataset


def random_dataset(
    rng: np.random.Generator,
    n: int,
    d1: int,
    d2: int,
    treat_all: bool = False,
) -> Dataset:
    """Gaussian covariates, logistic treatments and a linear outcome."""
    s1 = np.column_stack([np.ones(n), rng.standard_normal((n, d1 - 1))])
    s2 = rng.standard_normal((n, d2))
    if treat_all:
        a1 = np.ones(n)
        a2 = np.ones(n)
    else:
        a1 = (rng.random(n) < expit(0.3 + 0.4 * s1[:, 1])).astype(float)
        a2 = (rng.random(n) < expit(0.2 - 0.3 * s2[:, 0])).astype(float) if d2 else np.ones(n)
    y = 1.0 + s1[:, 1] + (s2[:, 0] if d2 else 0.0) + rng.standard_normal(n)
    return Dataset(y=y, a1=a1, a2=a2, s1=s1, s2=s2)


def finite_difference(f: Callable[[np.ndarray], float], x: np.ndarray, h: float = 1e-5) -> np.ndarray:
    """Central-difference gradient of a scalar function."""
    grad = np.empty_like(x)
    for j in range(x.shape[0]):
        step = np.zeros_like(x)
        step[j] = h
        grad[j] = (f(x + step) - f(x - step)) / (2.0 * h)
    return grad


def loss_hessian(problem: LossProblem, coef: np.ndarray) -> np.ndarray:
    """Analytic Hessian of the smooth part of ``problem``."""
    eta = problem.design @ coef
    if problem.family is LossFamily.EXPONENTIAL:
        curvature = problem.weights * problem.response * np.exp(-eta)
    elif problem.family is LossFamily.LOGISTIC:
        p = expit(eta)
        curvature = problem.weights * p * (1.0 - p)
    else:
        curvature = 2.0 * problem.weights
    return (problem.design * curvature[:, None]).T @ problem.design / problem.n_rows


def newton_reference(problem: LossProblem, max_iter: int = 200, tol: float = 1e-13) -> np.ndarray:
    """Unpenalized minimizer by damped Newton with Armijo backtracking."""
    x = np.zeros(problem.dim)
    for _ in range(max_iter):
        current = problem.evaluate(x)
        if np.max(np.abs(current.gradient)) < tol:
            break
        direction = np.linalg.solve(loss_hessian(problem, x), current.gradient)
        t = 1.0
        while problem.value(x - t * direction) > current.value - 0.25 * t * (current.gradient @ direction):
            t *= 0.5
            if t < 1e-12:
                break
        x = x - t * direction
    return x


def separable_quadratic(targets: np.ndarray) -> LossProblem:
    """Problem whose loss is 0.5 * ||targets - b||^2, so the lasso solution is soft-thresholding."""
    dim = targets.shape[0]
    return LossProblem(
        kind=LossKind.BASE_OR2,
        design=np.eye(dim),
        response=np.asarray(targets, dtype=float),
        weights=np.full(dim, dim / 2.0),
    )
