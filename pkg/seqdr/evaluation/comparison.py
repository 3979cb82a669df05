"""
Estimator comparison table.

Dependencies: pandas
System role: Side-by-side contrast of moment-targeted and baseline estimators
"""

import math

import pandas as pd

from seqdr.core.exceptions import InvalidArgumentError
from seqdr.core.pipeline.models import NuisanceFamily
from seqdr.models.study import ComparisonRow, ComparisonTable, StudyResult

# Coverage within this distance of the nominal level counts as holding
COVERAGE_BAND = 0.04


def _ratio(value: float, reference: float) -> float:
    if value == reference:
        return 1.0
    if reference == 0.0:
        return math.inf
    return value / reference


def coverage_holds(coverage: float, level: float) -> bool:
    return abs(coverage - level) <= COVERAGE_BAND


def compare_estimators(result: StudyResult) -> ComparisonTable:
    """
    Compare every estimator against the first one.

    Args:
        result: Study result with at least two estimators

    Returns:
        ComparisonTable: Metrics with ratios to the reference, and whether a
        moment-targeted estimator keeps nominal coverage where a baseline one
        falls below it
    """
    if len(result.summaries) < 2:
        raise InvalidArgumentError("Comparison needs at least two estimators", field="summaries")
    reference = result.summaries[0]
    rows = [
        ComparisonRow(
            estimator=summary.estimator,
            nuisance_family=summary.nuisance_family,
            bias=summary.bias,
            rmse=summary.rmse,
            coverage=summary.coverage,
            mean_ci_length=summary.mean_ci_length,
            mean_sigma_hat=summary.mean_sigma_hat,
            rmse_ratio=_ratio(summary.rmse, reference.rmse),
            ci_length_ratio=_ratio(summary.mean_ci_length, reference.mean_ci_length),
            coverage_ratio=_ratio(summary.coverage, reference.coverage),
            abs_bias_ratio=_ratio(abs(summary.bias), abs(reference.bias)),
        )
        for summary in result.summaries
    ]

    moment_holds = any(
        summary.nuisance_family == NuisanceFamily.MOMENT_TARGETED.value
        and summary.replications > 0
        and coverage_holds(summary.coverage, result.level)
        for summary in result.summaries
    )
    baseline_degrades = any(
        summary.nuisance_family == NuisanceFamily.BASELINE.value
        and summary.replications > 0
        and summary.coverage < result.level - COVERAGE_BAND
        for summary in result.summaries
    )
    return ComparisonTable(
        scenario_pattern=result.scenario.pattern,
        level=result.level,
        reference=reference.estimator,
        rows=rows,
        moment_targeted_advantage=moment_holds and baseline_degrades,
    )


def comparison_frame(table: ComparisonTable) -> pd.DataFrame:
    """Comparison rows as a DataFrame."""
    return pd.DataFrame([row.model_dump() for row in table.rows])
