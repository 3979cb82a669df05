"""
Loss problem container.

Every nuisance loss, moment-targeted or baseline, reduces to one of three
weighted families over a design matrix X with rows x_i:

- exponential: w_i {(1 - a_i) x_i'b + a_i exp(-x_i'b)}
- logistic:    w_i {-a_i x_i'b + log(1 + exp(x_i'b))}
- quadratic:   w_i (t_i - x_i'b)^2

Weights and targets depend only on frozen earlier-stage coefficients, so they
are computed once when the problem is built.

Dependencies: numpy
System role: Uniform (value, gradient) oracle consumed by the L1 solver
"""

from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType

import numpy as np
from scipy.special import expit

from seqdr.core.model_core.link import cap_predictor


class LossFamily(str, Enum):
    EXPONENTIAL = "exponential"
    LOGISTIC = "logistic"
    QUADRATIC = "quadratic"


class LossKind(str, Enum):
    """The eight nuisance losses."""

    L1_PS1 = "L1_ps1"
    L2_PS2 = "L2_ps2"
    L3_OR2 = "L3_or2"
    L4_OR1 = "L4_or1"
    BASE_PS1 = "Base_ps1"
    BASE_PS2 = "Base_ps2"
    BASE_OR2 = "Base_or2"
    BASE_OR1 = "Base_or1"

    @property
    def stage(self) -> str:
        """Nuisance slot filled by this loss (gamma, delta, alpha or beta)."""
        return _STAGE[self]

    @property
    def family(self) -> LossFamily:
        return _FAMILY[self]

    @property
    def on_history(self) -> bool:
        """True when the coefficient lives on (S1, S2) rather than S1."""
        return self.stage in ("delta", "alpha")

    @property
    def frozen_names(self) -> tuple[str, ...]:
        """Earlier-stage coefficients this loss treats as data."""
        return _FROZEN[self]


_STAGE = {
    LossKind.L1_PS1: "gamma",
    LossKind.L2_PS2: "delta",
    LossKind.L3_OR2: "alpha",
    LossKind.L4_OR1: "beta",
    LossKind.BASE_PS1: "gamma",
    LossKind.BASE_PS2: "delta",
    LossKind.BASE_OR2: "alpha",
    LossKind.BASE_OR1: "beta",
}

_FAMILY = {
    LossKind.L1_PS1: LossFamily.EXPONENTIAL,
    LossKind.L2_PS2: LossFamily.EXPONENTIAL,
    LossKind.L3_OR2: LossFamily.QUADRATIC,
    LossKind.L4_OR1: LossFamily.QUADRATIC,
    LossKind.BASE_PS1: LossFamily.LOGISTIC,
    LossKind.BASE_PS2: LossFamily.LOGISTIC,
    LossKind.BASE_OR2: LossFamily.QUADRATIC,
    LossKind.BASE_OR1: LossFamily.QUADRATIC,
}

_FROZEN = {
    LossKind.L1_PS1: (),
    LossKind.L2_PS2: ("gamma",),
    LossKind.L3_OR2: ("gamma", "delta"),
    LossKind.L4_OR1: ("gamma", "delta", "alpha"),
    LossKind.BASE_PS1: (),
    LossKind.BASE_PS2: (),
    LossKind.BASE_OR2: (),
    LossKind.BASE_OR1: ("alpha",),
}


@dataclass(frozen=True, eq=False)
class LossEval:
    """Subsample-mean loss value and its gradient."""

    value: float
    gradient: np.ndarray
    saturated: bool = False


@dataclass(frozen=True, eq=False)
class LossProblem:
    """A smooth convex loss over one subsample, ready for the solver.

    Attributes:
        kind: Which of the eight losses this is
        design: Covariate rows of the subsample (S1 or the full history)
        response: Treatment indicator (exponential/logistic) or target (quadratic)
        weights: Per-row nonnegative weights
        frozen: Earlier-stage coefficients the weights and targets were built from
        frozen_saturated: Whether building the weights hit the predictor cap
        clipped: Treated rows whose frozen propensity was clipped to the overlap bounds
    """

    kind: LossKind
    design: np.ndarray
    response: np.ndarray
    weights: np.ndarray
    frozen: Mapping[str, np.ndarray] = field(default_factory=dict)
    frozen_saturated: bool = False
    clipped: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "frozen", MappingProxyType(dict(self.frozen)))

    @property
    def dim(self) -> int:
        return int(self.design.shape[1])

    @property
    def n_rows(self) -> int:
        return int(self.design.shape[0])

    @property
    def family(self) -> LossFamily:
        return self.kind.family

    def evaluate(self, coef: np.ndarray) -> LossEval:
        """
        Loss value and analytic gradient at ``coef``.

        Args:
            coef: Coefficient vector of length ``dim``

        Returns:
            LossEval: Mean loss, mean gradient and a saturation flag
        """
        eta, saturated = cap_predictor(self.design @ coef)
        a, w = self.response, self.weights
        if self.family is LossFamily.EXPONENTIAL:
            tail = np.exp(-eta)
            losses = w * ((1.0 - a) * eta + a * tail)
            slopes = w * (1.0 - a * (1.0 + tail))
        elif self.family is LossFamily.LOGISTIC:
            losses = w * (np.logaddexp(0.0, eta) - a * eta)
            slopes = w * (expit(eta) - a)
        else:
            residual = a - eta
            losses = w * residual**2
            slopes = -2.0 * w * residual
        value = float(np.mean(losses))
        gradient = slopes @ self.design / self.n_rows
        return LossEval(
            value=value,
            gradient=gradient,
            saturated=saturated or self.frozen_saturated,
        )

    def value(self, coef: np.ndarray) -> float:
        """Loss value only."""
        return self.evaluate(coef).value

    def subset(self, rows: np.ndarray) -> "LossProblem":
        """Restrict the problem to a subset of its rows (weights stay frozen)."""
        rows = np.asarray(rows, dtype=np.intp)
        return LossProblem(
            kind=self.kind,
            design=self.design[rows],
            response=self.response[rows],
            weights=self.weights[rows],
            frozen=self.frozen,
            frozen_saturated=self.frozen_saturated,
            clipped=self.clipped,
        )
