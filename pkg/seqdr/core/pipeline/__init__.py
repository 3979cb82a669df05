"""
Cross-fitting plan, sequential nuisance fitting and the doubly robust estimator.
"""

from seqdr.core.pipeline.estimator import (
    EstimateDiagnostics,
    EstimateReport,
    estimate,
    estimate_dte,
    summarize_scores,
)
from seqdr.core.pipeline.models import EstimatorChoice, NuisanceFamily
from seqdr.core.pipeline.nuisance import NuisanceEstimate, StageFit, fit_nuisances
from seqdr.core.pipeline.plan import CrossFitPlan, FoldSubsamples, LeftoverPolicy, make_plan

__all__ = [
    "CrossFitPlan",
    "EstimateDiagnostics",
    "EstimateReport",
    "EstimatorChoice",
    "FoldSubsamples",
    "LeftoverPolicy",
    "NuisanceEstimate",
    "NuisanceFamily",
    "StageFit",
    "estimate",
    "estimate_dte",
    "fit_nuisances",
    "make_plan",
    "summarize_scores",
]
