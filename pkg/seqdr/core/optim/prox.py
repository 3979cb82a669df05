"""
Proximal operator of the weighted L1 norm.

Dependencies: numpy
System role: Shrinkage step of the proximal gradient solver
"""

import numpy as np


def soft_threshold(x: np.ndarray, threshold: np.ndarray | float) -> np.ndarray:
    """Coordinatewise sign(x) max(|x| - threshold, 0)."""
    return np.sign(x) * np.maximum(np.abs(x) - threshold, 0.0)


def penalty_weights(dim: int, lam: float, penalize_intercept: bool = True) -> np.ndarray:
    """Per-coordinate L1 weights; coordinate 0 gets 0 when the intercept is free."""
    weights = np.full(dim, float(lam))
    if not penalize_intercept and dim > 0:
        weights[0] = 0.0
    return weights


def l1_penalty(coef: np.ndarray, weights: np.ndarray) -> float:
    return float(np.sum(weights * np.abs(coef)))
