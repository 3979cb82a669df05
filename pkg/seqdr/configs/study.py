"""
Monte Carlo study configuration settings.

Dependencies: pydantic_settings
System role: Replication harness defaults (parallelism, population sizes)
"""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class StudySettings(BaseSettings):
    """Defaults for the replication harness."""

    model_config = SettingsConfigDict(
        env_prefix="SEQDR_STUDY_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    parallelism: int = Field(
        default=1,
        ge=1,
        description="Worker processes for replications (SEQDR_STUDY_PARALLELISM)",
    )
    truth_draws: int = Field(
        default=1_000_000,
        ge=1000,
        description="Monte Carlo draws for theta_true when the outcome chain is nonlinear",
    )
    oracle_population: int = Field(
        default=200_000,
        ge=0,
        description="Population size for pseudo-true nuisance targets (0 disables)",
    )
    failure_threshold: float = Field(
        default=0.10,
        ge=0.0,
        le=1.0,
        description="Fraction of failed replications that aborts a study",
    )
