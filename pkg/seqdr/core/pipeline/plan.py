"""
Cross-fitting plan.

Folds come from one seeded permutation split into K nearly equal parts. The
complement of each fold is shuffled again with a per-fold stream and dealt
into four disjoint groups backing gamma, delta, alpha and beta.

Dependencies: numpy
System role: Sample-splitting layout shared by every estimate on a dataset
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from seqdr.core.exceptions import InvalidArgumentError, SizingError
from seqdr.observability import get_logger

logger = get_logger(__name__)

STAGES = ("gamma", "delta", "alpha", "beta")
MIN_ROWS_PER_FOLD = 8


class LeftoverPolicy(str, Enum):
    """What to do with the |I_-k| mod 4 rows that do not fill a group."""

    ROUND_ROBIN = "round_robin"
    DROP = "drop"


@dataclass(frozen=True, eq=False)
class FoldSubsamples:
    """Four disjoint index groups drawn from one fold's complement."""

    gamma: np.ndarray
    delta: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    leftover: np.ndarray

    def group(self, stage: str) -> np.ndarray:
        if stage not in STAGES:
            raise InvalidArgumentError(f"Unknown stage {stage!r}", field="stage")
        return getattr(self, stage)

    @property
    def sizes(self) -> tuple[int, int, int, int]:
        return tuple(int(self.group(stage).shape[0]) for stage in STAGES)


@dataclass(frozen=True, eq=False)
class CrossFitPlan:
    """Fold assignment plus per-fold nuisance subsamples; rebuilt from (n, k_folds, seed)."""

    n: int
    k_folds: int
    seed: int
    fold_of: np.ndarray
    subsamples: tuple[FoldSubsamples, ...]
    leftover_policy: LeftoverPolicy = LeftoverPolicy.ROUND_ROBIN

    def fold_indices(self, k: int) -> np.ndarray:
        """Sorted indices scored in fold k."""
        return np.flatnonzero(self.fold_of == k)

    def complement(self, k: int) -> np.ndarray:
        """Sorted indices outside fold k."""
        return np.flatnonzero(self.fold_of != k)

    @property
    def leftover_count(self) -> int:
        return sum(int(sub.leftover.shape[0]) for sub in self.subsamples)


def _locked(index: np.ndarray) -> np.ndarray:
    index = np.sort(index).astype(np.intp)
    index.setflags(write=False)
    return index


def make_plan(
    n: int,
    k_folds: int,
    seed: int,
    leftover_policy: LeftoverPolicy | str = LeftoverPolicy.ROUND_ROBIN,
) -> CrossFitPlan:
    """
    Build a deterministic cross-fitting plan.

    Args:
        n: Number of observations
        k_folds: Number of folds (at least 2)
        seed: Nonnegative seed
        leftover_policy: ``round_robin`` deals leftover rows to the first
            groups (sizes M or M + 1); ``drop`` keeps exactly M per group

    Returns:
        CrossFitPlan: Plan whose folds partition range(n)

    Raises:
        SizingError: If n < 8 * k_folds
    """
    if k_folds < 2:
        raise InvalidArgumentError("k_folds must be at least 2", field="k_folds")
    if seed < 0:
        raise InvalidArgumentError("seed must be nonnegative", field="seed")
    minimum = MIN_ROWS_PER_FOLD * k_folds
    if n < minimum:
        raise SizingError(n=n, k_folds=k_folds, minimum=minimum)
    policy = LeftoverPolicy(leftover_policy)

    permutation = np.random.default_rng(seed).permutation(n)
    fold_of = np.empty(n, dtype=np.intp)
    for k, members in enumerate(np.array_split(permutation, k_folds)):
        fold_of[members] = k
    fold_of.setflags(write=False)

    subsamples = []
    for k in range(k_folds):
        complement = np.flatnonzero(fold_of != k)
        shuffled = np.random.default_rng(np.random.SeedSequence([seed, k])).permutation(complement)
        size = shuffled.shape[0] // len(STAGES)
        if policy is LeftoverPolicy.ROUND_ROBIN:
            groups = [shuffled[j :: len(STAGES)] for j in range(len(STAGES))]
            leftover = shuffled[:0]
        else:
            groups = [shuffled[j * size : (j + 1) * size] for j in range(len(STAGES))]
            leftover = shuffled[len(STAGES) * size :]
        subsamples.append(
            FoldSubsamples(*(_locked(group) for group in groups), leftover=_locked(leftover))
        )

    plan = CrossFitPlan(
        n=n,
        k_folds=k_folds,
        seed=seed,
        fold_of=fold_of,
        subsamples=tuple(subsamples),
        leftover_policy=policy,
    )
    logger.debug(
        "plan_built",
        n=n,
        k_folds=k_folds,
        seed=seed,
        policy=policy.value,
        group_sizes=[sub.sizes for sub in plan.subsamples],
    )
    return plan
