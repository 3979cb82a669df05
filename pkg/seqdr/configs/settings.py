"""
Unified application settings.

Aggregates all configuration modules into a single Settings class.

Dependencies: All config modules
System role: Central configuration aggregator for the CLI and harness
"""

from functools import lru_cache

from pydantic import Field

from seqdr.configs.base import BaseSettings
from seqdr.configs.estimation import EstimationSettings
from seqdr.configs.solver import SolverSettings
from seqdr.configs.study import StudySettings


class Settings(BaseSettings):
    """Unified settings aggregating all config modules."""

    estimation: EstimationSettings = Field(default_factory=EstimationSettings)
    solver: SolverSettings = Field(default_factory=SolverSettings)
    study: StudySettings = Field(default_factory=StudySettings)


@lru_cache
def get_settings() -> Settings:
    """
    Get settings singleton.

    Environment variables are read once; call ``get_settings.cache_clear()``
    after changing them (tests do).

    Returns:
        Settings: Application settings instance

    Usage:
        from seqdr.configs import get_settings
        settings = get_settings()
    """
    return Settings()
