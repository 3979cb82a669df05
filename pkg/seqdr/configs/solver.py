"""
Solver configuration settings.

Dependencies: pydantic_settings
System role: Proximal gradient defaults
"""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class SolverSettings(BaseSettings):
    """Defaults for the L1-penalized proximal gradient solver."""

    model_config = SettingsConfigDict(
        env_prefix="SEQDR_SOLVER_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    max_iter: int = Field(default=5000, ge=1, description="Iteration cap per solve")
    tol: float = Field(default=1e-8, gt=0.0, description="KKT violation tolerance")
    backtrack_shrink: float = Field(
        default=0.5,
        gt=0.0,
        lt=1.0,
        description="Step shrink factor for backtracking; its inverse is the growth tried each iteration",
    )
    init_step: float = Field(default=1.0, gt=0.0, description="Initial step size")
    penalize_intercept: bool = Field(
        default=True,
        description="Include the constant column in the L1 penalty",
    )
