"""
Logistic link and capped exponential helpers.

Dependencies: numpy, scipy.special
System role: The only place propensities are turned into probabilities
"""

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import expit, logit

from seqdr.core.exceptions import InvalidArgumentError

# exp(700) is finite in float64; predictors beyond this are capped
LINEAR_PREDICTOR_CAP = 700.0


def logistic(u: ArrayLike) -> float | np.ndarray:
    """
    Evaluate g(u) = exp(u) / (1 + exp(u)).

    ``scipy.special.expit`` evaluates the branch-stable form, so large
    positive or negative arguments never overflow.

    Args:
        u: Finite scalar or array

    Returns:
        float | np.ndarray: Values in (0, 1] with the shape of ``u``

    Raises:
        InvalidArgumentError: If any input is NaN or infinite
    """
    values = np.asarray(u, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise InvalidArgumentError("logistic requires finite input", field="u")
    result = expit(values)
    if result.ndim == 0:
        return float(result)
    return result


def cap_predictor(u: np.ndarray) -> tuple[np.ndarray, bool]:
    """
    Clamp a linear predictor into [-700, 700].

    Returns:
        tuple: (capped predictor, whether any entry hit the cap)
    """
    saturated = bool(np.any(np.abs(u) > LINEAR_PREDICTOR_CAP))
    if saturated:
        u = np.clip(u, -LINEAR_PREDICTOR_CAP, LINEAR_PREDICTOR_CAP)
    return u, saturated


def inverse_logistic_weight(u: np.ndarray) -> np.ndarray:
    """Return 1 / g(u) = 1 + exp(-u) for an already capped predictor."""
    return 1.0 + np.exp(-u)


def clip_predictor(u: np.ndarray, c0: float, rows: np.ndarray | None = None) -> tuple[np.ndarray, int]:
    """
    Clamp a linear predictor so that g(u) lies in [c0, 1 - c0].

    Args:
        u: Linear predictor
        c0: Overlap floor in (0, 0.5)
        rows: Optional boolean mask of the rows whose clipping is counted

    Returns:
        tuple: (clamped predictor, number of counted rows that moved)
    """
    bound = float(logit(1.0 - c0))
    outside = np.abs(u) > bound
    if rows is not None:
        outside = outside & rows
    return np.clip(u, -bound, bound), int(np.count_nonzero(outside))
