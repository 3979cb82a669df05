"""
Sequential nuisance fitting for one fold.

Stages run in the fixed order gamma -> delta -> alpha -> beta, each on its own
subsample of the fold complement, each later stage treating the earlier fits
as data. Single-exposure data skips the time-2 propensity (and, for the
moment-targeted family, the time-2 outcome, which then drops out of the score).

Dependencies: numpy
System role: Nuisance estimation step of the cross-fitted estimator
"""

import math
from dataclasses import dataclass

import numpy as np

from seqdr.core.exceptions import (
    ConvergenceError,
    DegenerateSubsampleError,
    InvalidArgumentError,
    InvalidStartError,
)
from seqdr.core.losses import LossKind, LossProblem, build_problem
from seqdr.core.model_core.types import Dataset, NuisanceParams
from seqdr.core.optim import lambda_from_theory, select_scale_by_holdout, solve
from seqdr.core.pipeline.models import EstimatorChoice, NuisanceFamily
from seqdr.core.pipeline.plan import STAGES, CrossFitPlan
from seqdr.observability import get_logger, summarize

logger = get_logger(__name__)

FAMILY_KINDS = {
    NuisanceFamily.MOMENT_TARGETED: (
        LossKind.L1_PS1,
        LossKind.L2_PS2,
        LossKind.L3_OR2,
        LossKind.L4_OR1,
    ),
    NuisanceFamily.BASELINE: (
        LossKind.BASE_PS1,
        LossKind.BASE_PS2,
        LossKind.BASE_OR2,
        LossKind.BASE_OR1,
    ),
}


@dataclass(frozen=True)
class StageFit:
    """Diagnostics of one stage solve."""

    stage: str
    kind: str
    lam: float
    scale: float | None
    n_rows: int
    iterations: int
    kkt_violation: float
    converged: bool
    saturated: bool
    skipped: bool = False
    clipped: int = 0
    nonfinite: bool = False


@dataclass(frozen=True, eq=False)
class NuisanceEstimate:
    """Fitted coefficient quadruple for one fold plus per-stage diagnostics."""

    fold: int
    params: NuisanceParams
    stages: tuple[StageFit, ...]

    @property
    def nonconverged_stages(self) -> list[str]:
        return [
            f"fold{self.fold}:{fit.stage}"
            for fit in self.stages
            if not fit.converged and not fit.skipped
        ]

    @property
    def saturated_evals(self) -> int:
        return sum(1 for fit in self.stages if fit.saturated)

    @property
    def clipped_weights(self) -> int:
        """Treated rows whose frozen propensity was clipped inside a loss weight."""
        return sum(fit.clipped for fit in self.stages)

    @property
    def lambdas(self) -> tuple[float, ...]:
        return tuple(fit.lam for fit in self.stages)


def _nonfinite_fit(stage: str, kind: LossKind, n_rows: int, clipped: int) -> StageFit:
    return StageFit(
        stage=stage,
        kind=kind.value,
        lam=0.0,
        scale=None,
        n_rows=n_rows,
        iterations=0,
        kkt_violation=math.inf,
        converged=False,
        saturated=True,
        clipped=clipped,
        nonfinite=True,
    )


def _treatment_counts(rows: Dataset) -> dict[str, int]:
    return {
        "rows": rows.n,
        "a1": int(np.sum(rows.a1)),
        "a1a2": int(np.sum(rows.a1 * rows.a2)),
    }


def _check_subsample(rows: Dataset, stage: str, fold: int) -> None:
    counts = _treatment_counts(rows)
    needed = counts["a1a2"] if stage == "alpha" else counts["a1"]
    if needed == 0:
        raise DegenerateSubsampleError(fold=fold, stage=stage, counts=counts)


def _stage_lambda(
    problem: LossProblem,
    stage_index: int,
    choice: EstimatorChoice,
) -> tuple[float, float | None]:
    if choice.lambda_override is not None:
        return float(choice.lambda_override[stage_index]), None
    if problem.dim < 2:
        # An intercept-only stage has no selection to do
        return 0.0, None
    if choice.lambda_grid:
        selection = select_scale_by_holdout(problem, choice.lambda_grid, choice.solver)
        return selection.lam, selection.scale
    scale = float(choice.lambda_scales[stage_index])
    return lambda_from_theory(problem.n_rows, problem.dim, scale), scale


def fit_nuisances(
    data: Dataset,
    plan: CrossFitPlan,
    fold_k: int,
    choice: EstimatorChoice,
) -> NuisanceEstimate:
    """
    Fit eta on the complement of fold ``fold_k``.

    Frozen propensities inside the moment-targeted weights are clipped to
    ``choice.overlap``. A stage whose loss is not finite at the start is
    recorded with zero coefficients and ``nonfinite`` set.

    Args:
        data: Dataset with indicators already coded for the target path
        plan: Cross-fitting plan built for ``data``
        fold_k: Fold whose complement is used
        choice: Estimator family, penalties and solver settings

    Returns:
        NuisanceEstimate: Coefficients and per-stage diagnostics

    Raises:
        DegenerateSubsampleError: If a stage subsample lacks the treated rows it needs
        ConvergenceError: In strict mode, if any stage fails to converge or its
            loss is not finite at the start point
    """
    if plan.n != data.n:
        raise InvalidArgumentError(
            f"Plan built for {plan.n} rows, dataset has {data.n}", field="plan"
        )
    if not 0 <= fold_k < plan.k_folds:
        raise InvalidArgumentError(f"fold {fold_k} out of range", field="fold_k")

    subsamples = plan.subsamples[fold_k]
    kinds = FAMILY_KINDS[choice.nuisance_family]
    skip = set()
    if data.single_exposure:
        skip.add("delta")
        if choice.nuisance_family is NuisanceFamily.MOMENT_TARGETED:
            skip.add("alpha")

    fitted: dict[str, np.ndarray] = {}
    stages: list[StageFit] = []
    for stage_index, (stage, kind) in enumerate(zip(STAGES, kinds)):
        dim = data.d1 if stage in ("gamma", "beta") else data.d
        if stage in skip:
            fitted[stage] = np.zeros(dim)
            stages.append(
                StageFit(
                    stage=stage,
                    kind=kind.value,
                    lam=0.0,
                    scale=None,
                    n_rows=0,
                    iterations=0,
                    kkt_violation=0.0,
                    converged=True,
                    saturated=False,
                    skipped=True,
                )
            )
            continue

        rows = data.subset(subsamples.group(stage))
        _check_subsample(rows, stage, fold_k)
        problem = build_problem(
            kind,
            rows,
            {name: fitted[name] for name in kind.frozen_names},
            overlap=choice.overlap,
        )
        try:
            lam, scale = _stage_lambda(problem, stage_index, choice)
            result = solve(problem, choice.solver.model_copy(update={"lam": lam, "warm_start": None}))
        except InvalidStartError as exc:
            if choice.strict:
                raise ConvergenceError(
                    stage=f"fold{fold_k}:{stage}",
                    kkt_violation=math.inf,
                    details={"reason": exc.message},
                ) from exc
            logger.warning("stage_nonfinite", fold=fold_k, stage=stage, kind=kind.value)
            fitted[stage] = np.zeros(dim)
            stages.append(_nonfinite_fit(stage, kind, rows.n, problem.clipped))
            continue
        fit = StageFit(
            stage=stage,
            kind=kind.value,
            lam=lam,
            scale=scale,
            n_rows=rows.n,
            iterations=result.iterations,
            kkt_violation=result.kkt_violation,
            converged=result.converged,
            saturated=result.saturated,
            clipped=problem.clipped,
        )
        logger.debug(
            "stage_fit",
            fold=fold_k,
            stage=stage,
            kind=kind.value,
            lam=lam,
            iterations=result.iterations,
            kkt=result.kkt_violation,
            **summarize(coef=result.coef),
        )
        if not result.converged:
            if choice.strict:
                raise ConvergenceError(
                    stage=f"fold{fold_k}:{stage}",
                    kkt_violation=result.kkt_violation,
                    details={"iterations": result.iterations},
                )
            logger.warning(
                "stage_not_converged",
                fold=fold_k,
                stage=stage,
                kkt=result.kkt_violation,
                iterations=result.iterations,
            )
        fitted[stage] = result.coef
        stages.append(fit)

    params = NuisanceParams(
        gamma=fitted["gamma"],
        delta=fitted["delta"],
        alpha=fitted["alpha"],
        beta=fitted["beta"],
    )
    return NuisanceEstimate(fold=fold_k, params=params, stages=tuple(stages))
