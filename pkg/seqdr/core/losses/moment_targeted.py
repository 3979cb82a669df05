"""
Moment-targeted nuisance losses.

Each loss is built so that its gradient at the population target equals a
mean gradient of the doubly robust score:

- ps1 (gamma):  (1 - A1) S1'g + A1 exp(-S1'g)
- ps2 (delta):  A1 / g(S1'gamma) {(1 - A2) S2bar'd + A2 exp(-S2bar'd)}
- or2 (alpha):  A1 A2 exp(-S2bar'delta) / g(S1'gamma) (Y - S2bar'a)^2
- or1 (beta):   A1 exp(-S1'gamma) (U - S1'b)^2 with the pseudo-outcome
                U = S2bar'alpha + A2 (Y - S2bar'alpha) / g(S2bar'delta)

When an OverlapConfig with clipping is passed, the frozen propensity
predictors are clamped so that g stays in [c0, 1 - c0], the same bounds the
score applies. The weights are then bounded by 1 / c0 and (1 - c0) / c0.

Dependencies: numpy
System role: Loss builders for the moment-targeted estimator family
"""

import numpy as np

from seqdr.core.exceptions import InvalidArgumentError
from seqdr.core.losses.problem import LossEval, LossKind, LossProblem
from seqdr.core.model_core.link import cap_predictor, clip_predictor, inverse_logistic_weight
from seqdr.core.model_core.types import Dataset, OverlapConfig


def _frozen(vector: np.ndarray, dim: int, name: str) -> np.ndarray:
    vector = np.asarray(vector, dtype=np.float64)
    if vector.shape != (dim,):
        raise InvalidArgumentError(
            f"{name} has shape {vector.shape}, expected ({dim},)", field=name
        )
    if not np.all(np.isfinite(vector)):
        raise InvalidArgumentError(f"{name} has non-finite entries", field=name)
    return vector


def _predictor(
    u: np.ndarray,
    overlap: OverlapConfig | None,
    counted: np.ndarray,
) -> tuple[np.ndarray, bool, int]:
    u, saturated = cap_predictor(u)
    if overlap is None or not overlap.clip_propensities:
        return u, saturated, 0
    u, clipped = clip_predictor(u, overlap.c0, counted)
    return u, saturated, clipped


def _time2_predictor(
    rows: Dataset,
    delta_hat: np.ndarray,
    overlap: OverlapConfig | None = None,
) -> tuple[np.ndarray, bool, int]:
    """
    S2bar'delta after capping and optional overlap clipping.

    Returns:
        tuple: (predictor, whether it hit the cap, rows with A1 A2 = 1 clipped)
    """
    return _predictor(rows.s_bar @ delta_hat, overlap, (rows.a1 * rows.a2) == 1.0)


def time2_inverse_propensity(
    rows: Dataset,
    delta_hat: np.ndarray,
    overlap: OverlapConfig | None = None,
) -> tuple[np.ndarray, bool, int]:
    """1 / g(S2bar'delta), identically 1 for single-exposure data."""
    if rows.single_exposure:
        return np.ones(rows.n), False, 0
    u2, saturated, clipped = _time2_predictor(rows, delta_hat, overlap)
    return inverse_logistic_weight(u2), saturated, clipped


def ps1_problem(rows: Dataset) -> LossProblem:
    """Time-1 propensity loss on the gamma subsample."""
    return LossProblem(
        kind=LossKind.L1_PS1,
        design=rows.s1,
        response=rows.a1,
        weights=np.ones(rows.n),
    )


def ps2_problem(
    rows: Dataset,
    gamma_hat: np.ndarray,
    overlap: OverlapConfig | None = None,
) -> LossProblem:
    """Time-2 propensity loss on the delta subsample, weighted by A1 / g(S1'gamma_hat)."""
    gamma_hat = _frozen(gamma_hat, rows.d1, "gamma")
    u1, saturated, clipped = _predictor(rows.s1 @ gamma_hat, overlap, rows.a1 == 1.0)
    return LossProblem(
        kind=LossKind.L2_PS2,
        design=rows.s_bar,
        response=rows.a2,
        weights=rows.a1 * inverse_logistic_weight(u1),
        frozen={"gamma": gamma_hat},
        frozen_saturated=saturated,
        clipped=clipped,
    )


def or2_problem(
    rows: Dataset,
    gamma_hat: np.ndarray,
    delta_hat: np.ndarray,
    overlap: OverlapConfig | None = None,
) -> LossProblem:
    """Time-2 outcome loss on the alpha subsample."""
    gamma_hat = _frozen(gamma_hat, rows.d1, "gamma")
    delta_hat = _frozen(delta_hat, rows.d, "delta")
    treated = (rows.a1 * rows.a2) == 1.0
    u1, saturated1, clipped1 = _predictor(rows.s1 @ gamma_hat, overlap, treated)
    u2, saturated2, clipped2 = _time2_predictor(rows, delta_hat, overlap)
    weights = rows.a1 * rows.a2 * inverse_logistic_weight(u1) * np.exp(-u2)
    return LossProblem(
        kind=LossKind.L3_OR2,
        design=rows.s_bar,
        response=rows.y,
        weights=weights,
        frozen={"gamma": gamma_hat, "delta": delta_hat},
        frozen_saturated=saturated1 or saturated2,
        clipped=clipped1 + clipped2,
    )


def pseudo_outcome(
    rows: Dataset,
    delta_hat: np.ndarray,
    alpha_hat: np.ndarray,
    overlap: OverlapConfig | None = None,
) -> tuple[np.ndarray, bool]:
    """
    Doubly robust time-2 pseudo-outcome U = S2bar'alpha + A2 (Y - S2bar'alpha) / g(S2bar'delta).

    Returns:
        tuple: (pseudo-outcome per row, whether the delta predictor hit the cap)
    """
    outcome2 = rows.s_bar @ alpha_hat
    inv_g2, saturated, _ = time2_inverse_propensity(rows, delta_hat, overlap)
    return outcome2 + rows.a2 * (rows.y - outcome2) * inv_g2, saturated


def or1_problem(
    rows: Dataset,
    gamma_hat: np.ndarray,
    delta_hat: np.ndarray,
    alpha_hat: np.ndarray,
    overlap: OverlapConfig | None = None,
) -> LossProblem:
    """Time-1 outcome loss on the beta subsample."""
    gamma_hat = _frozen(gamma_hat, rows.d1, "gamma")
    delta_hat = _frozen(delta_hat, rows.d, "delta")
    alpha_hat = _frozen(alpha_hat, rows.d, "alpha")
    u1, saturated1, clipped1 = _predictor(rows.s1 @ gamma_hat, overlap, rows.a1 == 1.0)
    outcome2 = rows.s_bar @ alpha_hat
    inv_g2, saturated2, clipped2 = time2_inverse_propensity(rows, delta_hat, overlap)
    target = outcome2 + rows.a2 * (rows.y - outcome2) * inv_g2
    return LossProblem(
        kind=LossKind.L4_OR1,
        design=rows.s1,
        response=target,
        weights=rows.a1 * np.exp(-u1),
        frozen={"gamma": gamma_hat, "delta": delta_hat, "alpha": alpha_hat},
        frozen_saturated=saturated1 or saturated2,
        clipped=clipped1 + clipped2,
    )


def eval_l1(gamma: np.ndarray, rows: Dataset) -> LossEval:
    return ps1_problem(rows).evaluate(gamma)


def eval_l2(
    delta: np.ndarray,
    gamma_hat: np.ndarray,
    rows: Dataset,
    overlap: OverlapConfig | None = None,
) -> LossEval:
    return ps2_problem(rows, gamma_hat, overlap).evaluate(delta)


def eval_l3(
    alpha: np.ndarray,
    gamma_hat: np.ndarray,
    delta_hat: np.ndarray,
    rows: Dataset,
    overlap: OverlapConfig | None = None,
) -> LossEval:
    return or2_problem(rows, gamma_hat, delta_hat, overlap).evaluate(alpha)


def eval_l4(
    beta: np.ndarray,
    gamma_hat: np.ndarray,
    delta_hat: np.ndarray,
    alpha_hat: np.ndarray,
    rows: Dataset,
    overlap: OverlapConfig | None = None,
) -> LossEval:
    return or1_problem(rows, gamma_hat, delta_hat, alpha_hat, overlap).evaluate(beta)
