"""
Estimation configuration settings.

Defaults for cross-fitting, overlap handling and penalty scaling used when
the CLI or the study harness builds estimator choices.

Dependencies: pydantic_settings
System role: Estimator defaults loaded from the environment
"""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class EstimationSettings(BaseSettings):
    """Cross-fitting and nuisance-fitting defaults."""

    model_config = SettingsConfigDict(
        env_prefix="SEQDR_ESTIMATION_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    k_folds: int = Field(default=2, ge=2, description="Number of cross-fitting folds")
    level: float = Field(default=0.95, gt=0.0, lt=1.0, description="Confidence level")
    overlap_c0: float = Field(
        default=0.01,
        gt=0.0,
        lt=0.5,
        description="Propensity clipping floor c0",
    )
    clip_propensities: bool = Field(
        default=True,
        description="Clip fitted propensities into [c0, 1 - c0] before scoring",
    )
    lambda_scales: tuple[float, float, float, float] = Field(
        default=(1.0, 1.0, 0.5, 0.5),
        description="Penalty constants c for the gamma, delta, alpha and beta stages",
    )
    strict: bool = Field(
        default=False,
        description="Raise instead of warn when a stage fails to converge",
    )
    fold_workers: int = Field(
        default=1,
        ge=1,
        description="Threads used to fit folds concurrently",
    )
