"""
Nuisance loss functions.

Four moment-targeted losses and four baseline losses, each exposed as a
LossProblem with an analytic (value, gradient) oracle.
"""

from seqdr.core.losses.baseline import BASELINE_KINDS, baseline_problem, eval_baseline
from seqdr.core.losses.factory import build_problem
from seqdr.core.losses.moment_targeted import (
    eval_l1,
    eval_l2,
    eval_l3,
    eval_l4,
    or1_problem,
    or2_problem,
    ps1_problem,
    ps2_problem,
    pseudo_outcome,
)
from seqdr.core.losses.problem import LossEval, LossFamily, LossKind, LossProblem

__all__ = [
    "BASELINE_KINDS",
    "LossEval",
    "LossFamily",
    "LossKind",
    "LossProblem",
    "baseline_problem",
    "build_problem",
    "eval_baseline",
    "eval_l1",
    "eval_l2",
    "eval_l3",
    "eval_l4",
    "or1_problem",
    "or2_problem",
    "ps1_problem",
    "ps2_problem",
    "pseudo_outcome",
]
