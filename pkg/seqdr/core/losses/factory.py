"""Build any of the eight losses from a kind and its frozen coefficients."""

from collections.abc import Mapping

import numpy as np

from seqdr.core.exceptions import InvalidArgumentError
from seqdr.core.losses.baseline import baseline_problem
from seqdr.core.losses.moment_targeted import or1_problem, or2_problem, ps1_problem, ps2_problem
from seqdr.core.losses.problem import LossKind, LossProblem
from seqdr.core.model_core.types import Dataset, OverlapConfig


def build_problem(
    kind: LossKind,
    rows: Dataset,
    frozen: Mapping[str, np.ndarray] | None = None,
    overlap: OverlapConfig | None = None,
) -> LossProblem:
    """
    Dispatch to the loss builder for ``kind``.

    Args:
        kind: Loss kind
        rows: Subsample rows
        frozen: Earlier-stage coefficients keyed by stage name
        overlap: Clipping bounds applied to frozen propensities in the
            moment-targeted weights; None leaves them unclipped

    Returns:
        LossProblem: Problem whose dimension is d1 for gamma/beta kinds and d otherwise

    Raises:
        InvalidArgumentError: If a required frozen vector is missing
    """
    frozen = dict(frozen or {})
    missing = [name for name in kind.frozen_names if name not in frozen]
    if missing:
        raise InvalidArgumentError(
            f"{kind.value} needs frozen coefficients {missing}", field="frozen"
        )
    if kind is LossKind.L1_PS1:
        return ps1_problem(rows)
    if kind is LossKind.L2_PS2:
        return ps2_problem(rows, frozen["gamma"], overlap)
    if kind is LossKind.L3_OR2:
        return or2_problem(rows, frozen["gamma"], frozen["delta"], overlap)
    if kind is LossKind.L4_OR1:
        return or1_problem(rows, frozen["gamma"], frozen["delta"], frozen["alpha"], overlap)
    return baseline_problem(kind, rows, alpha_hat=frozen.get("alpha"))
