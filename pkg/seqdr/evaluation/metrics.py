"""
Replication metrics.

Dependencies: numpy, pandas
System role: Aggregation of replication records into estimator summaries
"""

from collections.abc import Sequence

import numpy as np
import pandas as pd

from seqdr.core.model_core.types import NuisanceParams
from seqdr.core.pipeline.estimator import EstimateReport
from seqdr.core.pipeline.plan import STAGES
from seqdr.models.study import EstimatorSummary, ReplicationRecord, StudyResult

TABLE_FLOAT_FORMAT = "%.6g"


def nuisance_errors(report: EstimateReport, target: NuisanceParams) -> dict[str, float]:
    """Fold-averaged L2 distance of each fitted stage from its target."""
    return {
        stage: float(
            np.mean([np.linalg.norm(eta.stage(stage) - target.stage(stage)) for eta in report.per_fold_eta])
        )
        for stage in STAGES
    }


def summarize_estimator(
    records: Sequence[ReplicationRecord],
    estimator: str,
    nuisance_family: str,
    theta_true: float,
    n: int,
) -> EstimatorSummary:
    """
    Aggregate one estimator's records.

    Failed replications are counted and excluded from every metric.

    Args:
        records: Records of this estimator across replications
        estimator: Estimator label
        nuisance_family: Loss family of the estimator
        theta_true: Target value
        n: Sample size of each replication

    Returns:
        EstimatorSummary: Bias, RMSE, coverage, interval length, sigma ratio
        and median nuisance errors
    """
    ok = [record for record in records if not record.failed]
    failures = len(records) - len(ok)
    if not ok:
        return EstimatorSummary(
            estimator=estimator,
            nuisance_family=nuisance_family,
            replications=0,
            failures=failures,
            bias=float("nan"),
            rmse=float("nan"),
            coverage=0.0,
            mean_ci_length=float("nan"),
            mean_sigma_hat=float("nan"),
            empirical_sd=float("nan"),
            bias_se=float("nan"),
        )

    theta_hat = np.array([record.theta_hat for record in ok])
    sigma_hat = np.array([record.sigma_hat for record in ok])
    lengths = np.array([record.ci_high - record.ci_low for record in ok])
    errors = theta_hat - theta_true
    empirical_sd = float(np.std(theta_hat, ddof=1)) if len(ok) > 1 else 0.0
    mean_sigma = float(np.mean(sigma_hat))

    stage_errors: dict[str, float] = {}
    for stage in STAGES:
        values = [record.nuisance_errors[stage] for record in ok if stage in record.nuisance_errors]
        if values:
            stage_errors[stage] = float(np.median(values))

    return EstimatorSummary(
        estimator=estimator,
        nuisance_family=nuisance_family,
        replications=len(ok),
        failures=failures,
        bias=float(np.mean(errors)),
        rmse=float(np.sqrt(np.mean(errors**2))),
        coverage=float(np.mean([bool(record.covered) for record in ok])),
        mean_ci_length=float(np.mean(lengths)),
        mean_sigma_hat=mean_sigma,
        empirical_sd=empirical_sd,
        bias_se=empirical_sd / float(np.sqrt(len(ok))),
        sigma_ratio=mean_sigma / (empirical_sd * float(np.sqrt(n))) if empirical_sd > 0 else None,
        nuisance_errors=stage_errors,
        nonconverged_stages=sum(record.nonconverged_stages for record in ok),
    )


def summary_frame(result: StudyResult) -> pd.DataFrame:
    """One row per estimator, nuisance errors flattened into error_<stage> columns."""
    rows = []
    for summary in result.summaries:
        row = summary.model_dump(exclude={"nuisance_errors"})
        for stage in STAGES:
            row[f"error_{stage}"] = summary.nuisance_errors.get(stage, np.nan)
        rows.append(row)
    frame = pd.DataFrame(rows)
    frame.insert(1, "target", result.target)
    frame.insert(2, "theta_true", result.theta_true)
    return frame


def write_summary_csv(result: StudyResult, path: str) -> None:
    """Write the human-readable summary table with six significant digits."""
    summary_frame(result).to_csv(path, index=False, float_format=TABLE_FLOAT_FORMAT, lineterminator="\n")
