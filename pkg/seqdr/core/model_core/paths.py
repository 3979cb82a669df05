"""
Treatment-path relabeling.

Every counterfactual mean theta_{a1,a2} is estimated with the (1,1) formulas
on data whose indicators are replaced by 1{A1 == a1} and 1{A2 == a2}.
Single-exposure data carries A2 = 1 on every row, so only paths with
a2_target = 1 exist for it.

Dependencies: numpy
System role: Single code path for all four treatment sequences
"""

import numpy as np

from seqdr.core.exceptions import InvalidArgumentError
from seqdr.core.model_core.types import Dataset, TreatmentPath


def relabel_for_path(data: Dataset, path: TreatmentPath) -> Dataset:
    """
    Recode treatment indicators so that ``path`` becomes the (1,1) path.

    Args:
        data: Observed dataset
        path: Target treatment sequence

    Returns:
        Dataset: Same outcomes and covariates with a1' = 1{a1 == a1_target}
        and a2' = 1{a2 == a2_target}

    Raises:
        InvalidArgumentError: If ``data`` is single-exposure and the path asks
            for A2 = 0
    """
    if data.single_exposure and path.a2_target == 0:
        raise InvalidArgumentError(
            f"Path {path.label} needs a time-2 exposure; single-exposure data only admits a2 = 1",
            field="path",
        )
    a1 = (data.a1 == path.a1_target).astype(np.float64)
    a2 = (data.a2 == path.a2_target).astype(np.float64)
    return data.with_treatments(a1, a2)
