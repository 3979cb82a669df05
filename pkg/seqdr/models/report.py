"""
Estimate report document.

Dependencies: pydantic
System role: JSON contract of the estimate command
"""

from pydantic import BaseModel, Field


class DiagnosticsDocument(BaseModel):
    """Counters collected during estimation."""

    clipped: int = Field(description="Propensities clipped into [c0, 1 - c0]")
    nonconverged_stages: list[str] = Field(
        default_factory=list, description="Stages whose solve missed the KKT tolerance"
    )
    saturated_evals: int = Field(description="Stage solves whose linear predictor hit the cap")
    degenerate_variance: bool = Field(
        default=False, description="All scores identical; the interval is a point"
    )
    leftover_rows: int = Field(default=0, description="Rows left out of nuisance subsamples")
    clipped_weights: int = Field(
        default=0, description="Treated rows whose propensity was clipped inside a loss weight"
    )


class EstimateDocument(BaseModel):
    """Serialized EstimateReport."""

    theta_hat: float
    sigma_hat: float = Field(ge=0.0)
    ci: tuple[float, float] = Field(description="Confidence interval [low, high]")
    level: float = Field(gt=0.0, lt=1.0)
    n: int
    k_folds: int
    seed: int
    path: str = Field(description="Target treatment path 'a1,a2'")
    contrast: str | None = Field(
        default=None, description="Control path of a treatment-effect contrast"
    )
    nuisance_family: str
    diagnostics: DiagnosticsDocument
    per_fold_lambdas: list[list[float]] = Field(
        default_factory=list, description="Stage lambdas (gamma, delta, alpha, beta) per fold"
    )
