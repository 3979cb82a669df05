"""
Cross-fitted sequential doubly robust estimator.

For each fold k the nuisances are fit on the fold complement and every
observation in fold k is scored with them. The point estimate is the mean
score, its variance the plain variance of the scores, and the interval a
normal one. Dynamic treatment effects difference per-observation scores of two
paths on the same plan.

Dependencies: numpy, scipy.stats
System role: End-to-end estimation entry point
"""

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import norm

from seqdr.core.exceptions import InvalidArgumentError
from seqdr.core.model_core.paths import relabel_for_path
from seqdr.core.model_core.score import score_values
from seqdr.core.model_core.types import Dataset, NuisanceParams, TreatmentPath
from seqdr.core.pipeline.models import EstimatorChoice
from seqdr.core.pipeline.nuisance import NuisanceEstimate, fit_nuisances
from seqdr.core.pipeline.plan import CrossFitPlan
from seqdr.models.report import DiagnosticsDocument, EstimateDocument
from seqdr.observability import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class EstimateDiagnostics:
    """Counters collected while estimating."""

    clipped: int = 0
    nonconverged_stages: tuple[str, ...] = ()
    saturated_evals: int = 0
    degenerate_variance: bool = False
    leftover_rows: int = 0
    clipped_weights: int = 0

    def merge(self, other: "EstimateDiagnostics", prefix: str = "") -> "EstimateDiagnostics":
        """Combine counters of two estimates (used for contrasts)."""
        return EstimateDiagnostics(
            clipped=self.clipped + other.clipped,
            nonconverged_stages=self.nonconverged_stages
            + tuple(f"{prefix}{stage}" for stage in other.nonconverged_stages),
            saturated_evals=self.saturated_evals + other.saturated_evals,
            degenerate_variance=self.degenerate_variance,
            leftover_rows=max(self.leftover_rows, other.leftover_rows),
            clipped_weights=self.clipped_weights + other.clipped_weights,
        )


@dataclass(frozen=True, eq=False)
class EstimateReport:
    """Point estimate, standard deviation of the score, interval and per-row scores.

    For a contrast, ``path`` is the treated path, ``contrast`` the control path,
    and ``score_values`` holds per-observation score differences.
    """

    theta_hat: float
    sigma_hat: float
    ci_low: float
    ci_high: float
    level: float
    n: int
    k_folds: int
    seed: int
    path: str
    nuisance_family: str
    score_values: np.ndarray
    per_fold_eta: tuple[NuisanceParams, ...] = ()
    per_fold_lambdas: tuple[tuple[float, ...], ...] = ()
    diagnostics: EstimateDiagnostics = field(default_factory=EstimateDiagnostics)
    contrast: str | None = None

    @property
    def std_error(self) -> float:
        """Standard error of theta_hat, sigma_hat / sqrt(n)."""
        return self.sigma_hat / float(np.sqrt(self.n))

    @property
    def ci_length(self) -> float:
        return self.ci_high - self.ci_low

    def covers(self, value: float, tolerance: float = 0.0) -> bool:
        """Whether the interval meets [value - tolerance, value + tolerance]."""
        return self.ci_low <= value + tolerance and self.ci_high >= value - tolerance

    def to_document(self) -> EstimateDocument:
        """Convert to the JSON document schema."""
        return EstimateDocument(
            theta_hat=self.theta_hat,
            sigma_hat=self.sigma_hat,
            ci=(self.ci_low, self.ci_high),
            level=self.level,
            n=self.n,
            k_folds=self.k_folds,
            seed=self.seed,
            path=self.path,
            contrast=self.contrast,
            nuisance_family=self.nuisance_family,
            diagnostics=DiagnosticsDocument(
                clipped=self.diagnostics.clipped,
                nonconverged_stages=list(self.diagnostics.nonconverged_stages),
                saturated_evals=self.diagnostics.saturated_evals,
                degenerate_variance=self.diagnostics.degenerate_variance,
                leftover_rows=self.diagnostics.leftover_rows,
                clipped_weights=self.diagnostics.clipped_weights,
            ),
            per_fold_lambdas=[list(lams) for lams in self.per_fold_lambdas],
        )


@dataclass(frozen=True)
class ScoreSummary:
    theta_hat: float
    sigma_hat: float
    ci_low: float
    ci_high: float
    degenerate: bool


def summarize_scores(scores: np.ndarray, level: float) -> ScoreSummary:
    """
    Mean, root mean squared deviation and normal interval of a score vector.

    Args:
        scores: Per-observation scores
        level: Confidence level in (0, 1)

    Returns:
        ScoreSummary: theta = mean, sigma^2 = mean((score - theta)^2), and
        theta +/- z_{(1+level)/2} sigma / sqrt(N)
    """
    if not 0.0 < level < 1.0:
        raise InvalidArgumentError("level must lie in (0, 1)", field="level")
    theta = float(np.mean(scores))
    sigma = float(np.sqrt(np.mean((scores - theta) ** 2)))
    half_width = float(norm.ppf((1.0 + level) / 2.0)) * sigma / float(np.sqrt(scores.shape[0]))
    return ScoreSummary(
        theta_hat=theta,
        sigma_hat=sigma,
        ci_low=theta - half_width,
        ci_high=theta + half_width,
        degenerate=sigma == 0.0,
    )


def _fit_all_folds(
    data: Dataset,
    plan: CrossFitPlan,
    choice: EstimatorChoice,
    workers: int,
) -> list[NuisanceEstimate]:
    folds = range(plan.k_folds)
    if workers <= 1:
        return [fit_nuisances(data, plan, k, choice) for k in folds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda k: fit_nuisances(data, plan, k, choice), folds))


def _injected(
    nuisances: NuisanceParams | Sequence[NuisanceParams],
    k_folds: int,
) -> list[NuisanceParams]:
    if isinstance(nuisances, NuisanceParams):
        return [nuisances] * k_folds
    nuisances = list(nuisances)
    if len(nuisances) != k_folds:
        raise InvalidArgumentError(
            f"Expected {k_folds} injected nuisance sets, got {len(nuisances)}",
            field="nuisances",
        )
    return nuisances


def estimate(
    data: Dataset,
    path: TreatmentPath,
    choice: EstimatorChoice,
    plan: CrossFitPlan,
    level: float = 0.95,
    nuisances: NuisanceParams | Sequence[NuisanceParams] | None = None,
    fold_workers: int = 1,
) -> EstimateReport:
    """
    Cross-fitted estimate of the counterfactual mean for ``path``.

    Args:
        data: Observed dataset
        path: Target treatment sequence
        choice: Estimator configuration
        plan: Cross-fitting plan built for ``data``
        level: Confidence level
        nuisances: Optional per-fold (or shared) coefficients to score with
            instead of fitting; they must be coded for ``path``
        fold_workers: Threads fitting folds concurrently

    Returns:
        EstimateReport: Estimate, interval, scores and diagnostics
    """
    if plan.n != data.n:
        raise InvalidArgumentError(
            f"Plan built for {plan.n} rows, dataset has {data.n}", field="plan"
        )
    coded = relabel_for_path(data, path)

    if nuisances is None:
        estimates = _fit_all_folds(coded, plan, choice, fold_workers)
        per_fold = [fit.params for fit in estimates]
        lambdas = tuple(fit.lambdas for fit in estimates)
        nonconverged = tuple(stage for fit in estimates for stage in fit.nonconverged_stages)
        saturated = sum(fit.saturated_evals for fit in estimates)
        clipped_weights = sum(fit.clipped_weights for fit in estimates)
    else:
        per_fold = _injected(nuisances, plan.k_folds)
        lambdas, nonconverged, saturated, clipped_weights = (), (), 0, 0

    scores = np.empty(data.n)
    clipped = 0
    for k, eta in enumerate(per_fold):
        members = plan.fold_indices(k)
        batch = score_values(coded.subset(members), eta, choice.overlap)
        scores[members] = batch.values
        clipped += batch.clipped
    scores.setflags(write=False)

    summary = summarize_scores(scores, level)
    if summary.degenerate:
        logger.warning("degenerate_variance", path=path.label, theta=summary.theta_hat)
    if clipped:
        logger.info("propensities_clipped", path=path.label, clipped=clipped)

    report = EstimateReport(
        theta_hat=summary.theta_hat,
        sigma_hat=summary.sigma_hat,
        ci_low=summary.ci_low,
        ci_high=summary.ci_high,
        level=level,
        n=data.n,
        k_folds=plan.k_folds,
        seed=plan.seed,
        path=path.label,
        nuisance_family=choice.nuisance_family.value,
        score_values=scores,
        per_fold_eta=tuple(per_fold),
        per_fold_lambdas=lambdas,
        diagnostics=EstimateDiagnostics(
            clipped=clipped,
            nonconverged_stages=nonconverged,
            saturated_evals=saturated,
            degenerate_variance=summary.degenerate,
            leftover_rows=plan.leftover_count,
            clipped_weights=clipped_weights,
        ),
    )
    logger.debug(
        "estimate_done",
        path=path.label,
        family=choice.nuisance_family.value,
        theta=report.theta_hat,
        sigma=report.sigma_hat,
    )
    return report


def estimate_dte(
    data: Dataset,
    path_treat: TreatmentPath,
    path_control: TreatmentPath,
    choice: EstimatorChoice,
    plan: CrossFitPlan,
    level: float = 0.95,
    nuisances_treat: NuisanceParams | Sequence[NuisanceParams] | None = None,
    nuisances_control: NuisanceParams | Sequence[NuisanceParams] | None = None,
    fold_workers: int = 1,
) -> EstimateReport:
    """
    Dynamic treatment effect theta_treat - theta_control on a shared plan.

    The variance is that of the per-observation score differences, which
    accounts for the correlation between the two counterfactual means.

    Returns:
        EstimateReport: Contrast report; ``score_values`` are the differences
    """
    if path_treat == path_control:
        raise InvalidArgumentError("Treatment and control paths must differ", field="path_control")
    treat = estimate(data, path_treat, choice, plan, level, nuisances_treat, fold_workers)
    control = estimate(data, path_control, choice, plan, level, nuisances_control, fold_workers)

    differences = treat.score_values - control.score_values
    differences.setflags(write=False)
    summary = summarize_scores(differences, level)
    if summary.degenerate:
        logger.warning("degenerate_variance", path=path_treat.label, contrast=path_control.label)
    diagnostics = EstimateDiagnostics(
        clipped=treat.diagnostics.clipped,
        nonconverged_stages=tuple(f"{path_treat.label}/{s}" for s in treat.diagnostics.nonconverged_stages),
        saturated_evals=treat.diagnostics.saturated_evals,
        leftover_rows=treat.diagnostics.leftover_rows,
        clipped_weights=treat.diagnostics.clipped_weights,
    ).merge(control.diagnostics, prefix=f"{path_control.label}/")
    return EstimateReport(
        theta_hat=summary.theta_hat,
        sigma_hat=summary.sigma_hat,
        ci_low=summary.ci_low,
        ci_high=summary.ci_high,
        level=level,
        n=data.n,
        k_folds=plan.k_folds,
        seed=plan.seed,
        path=path_treat.label,
        contrast=path_control.label,
        nuisance_family=choice.nuisance_family.value,
        score_values=differences,
        per_fold_eta=treat.per_fold_eta + control.per_fold_eta,
        per_fold_lambdas=treat.per_fold_lambdas + control.per_fold_lambdas,
        diagnostics=EstimateDiagnostics(
            clipped=diagnostics.clipped,
            nonconverged_stages=diagnostics.nonconverged_stages,
            saturated_evals=diagnostics.saturated_evals,
            degenerate_variance=summary.degenerate,
            leftover_rows=diagnostics.leftover_rows,
            clipped_weights=diagnostics.clipped_weights,
        ),
    )
