"""
Doubly robust score for the treatment path (1,1).

psi(W; eta) = S1'beta
              + A1 (S2bar'alpha - S1'beta) / g(S1'gamma)
              + A1 A2 (Y - S2bar'alpha) / (g(S1'gamma) g(S2bar'delta))

Other paths go through relabel_for_path first. With no S2 columns the
time-2 propensity is identically 1.

Dependencies: numpy, scipy.special
System role: Per-observation estimating function and its gradients
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from seqdr.core.exceptions import NumericalDegeneracyError
from seqdr.core.model_core.link import cap_predictor
from seqdr.core.model_core.paths import relabel_for_path
from seqdr.core.model_core.types import (
    Dataset,
    NuisanceParams,
    Observation,
    OverlapConfig,
    TreatmentPath,
)


@dataclass(frozen=True, eq=False)
class ScoreBatch:
    """Score values of a block of observations plus clipping count."""

    values: np.ndarray
    clipped: int


def _propensities(
    data: Dataset, eta: NuisanceParams
) -> tuple[np.ndarray, np.ndarray]:
    g1 = expit(data.s1 @ eta.gamma)
    if data.single_exposure:
        g2 = np.ones(data.n)
    else:
        g2 = expit(data.s_bar @ eta.delta)
    return g1, g2


def score_values(data: Dataset, eta: NuisanceParams, overlap: OverlapConfig) -> ScoreBatch:
    """
    Evaluate psi for every row of ``data`` under (1,1) semantics.

    Correction terms are only formed on rows whose treatment product is 1,
    so rows with A1 = 0 never divide by a propensity.

    Args:
        data: Dataset whose indicators already encode the target path
        eta: Nuisance coefficients
        overlap: Clipping configuration

    Returns:
        ScoreBatch: One score per row and the number of clipped propensities

    Raises:
        NumericalDegeneracyError: If clipping is disabled and a needed
            propensity is exactly zero
    """
    eta.check_compatible(data)
    g1, g2 = _propensities(data, eta)
    treated1 = data.a1 == 1.0
    treated12 = treated1 & (data.a2 == 1.0)

    clipped = 0
    if overlap.clip_propensities:
        low, high = overlap.c0, 1.0 - overlap.c0
        clipped += int(np.count_nonzero(treated1 & ((g1 < low) | (g1 > high))))
        g1 = np.clip(g1, low, high)
        if not data.single_exposure:
            clipped += int(np.count_nonzero(treated12 & ((g2 < low) | (g2 > high))))
            g2 = np.clip(g2, low, high)
    else:
        zero1 = np.flatnonzero(treated1 & (g1 == 0.0))
        if zero1.size:
            raise NumericalDegeneracyError(int(zero1[0]), "time1")
        zero2 = np.flatnonzero(treated12 & (g2 == 0.0))
        if zero2.size:
            raise NumericalDegeneracyError(int(zero2[0]), "time2")

    outcome1 = data.s1 @ eta.beta
    outcome2 = data.s_bar @ eta.alpha
    psi = outcome1.copy()
    psi[treated1] += (outcome2[treated1] - outcome1[treated1]) / g1[treated1]
    psi[treated12] += (data.y[treated12] - outcome2[treated12]) / (
        g1[treated12] * g2[treated12]
    )
    return ScoreBatch(values=psi, clipped=clipped)


def score(
    obs: Observation,
    eta: NuisanceParams,
    path: TreatmentPath,
    overlap: OverlapConfig,
) -> float:
    """
    Evaluate psi at a single observation for any treatment path.

    Args:
        obs: One observation (y, a1, a2, s1 row, s2 row)
        eta: Nuisance coefficients
        path: Target treatment sequence
        overlap: Clipping configuration

    Returns:
        float: The uncentered doubly robust score
    """
    row = relabel_for_path(Dataset.from_observation(obs), path)
    return float(score_values(row, eta, overlap).values[0])


def score_gradient(data: Dataset, eta: NuisanceParams) -> NuisanceParams:
    """
    Sample mean of the gradient of psi with respect to each nuisance block.

    Evaluated without clipping. A vanishing mean gradient at the fitted
    nuisances is what makes the estimator first-order insensitive to them.

    Args:
        data: Dataset under (1,1) semantics
        eta: Point at which the gradient is taken

    Returns:
        NuisanceParams: Mean gradients in the gamma, delta, alpha and beta slots
    """
    eta.check_compatible(data)
    n = data.n
    a1, a2, y = data.a1, data.a2, data.y
    u1, _ = cap_predictor(data.s1 @ eta.gamma)
    exp1 = np.exp(-u1)
    inv_g1 = 1.0 + exp1
    if data.single_exposure:
        exp2 = np.zeros(n)
    else:
        u2, _ = cap_predictor(data.s_bar @ eta.delta)
        exp2 = np.exp(-u2)
    inv_g2 = 1.0 + exp2
    outcome1 = data.s1 @ eta.beta
    outcome2 = data.s_bar @ eta.alpha
    residual2 = y - outcome2
    pseudo = outcome2 + a2 * residual2 * inv_g2

    grad_gamma = -(a1 * exp1 * (pseudo - outcome1)) @ data.s1 / n
    grad_delta = -(a1 * a2 * inv_g1 * exp2 * residual2) @ data.s_bar / n
    grad_alpha = (a1 * inv_g1 * (1.0 - a2 * inv_g2)) @ data.s_bar / n
    grad_beta = (1.0 - a1 * inv_g1) @ data.s1 / n
    return NuisanceParams(gamma=grad_gamma, delta=grad_delta, alpha=grad_alpha, beta=grad_beta)


__all__ = ["ScoreBatch", "score", "score_gradient", "score_values"]
