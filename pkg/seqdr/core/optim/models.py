"""
Solver configuration and result types.

Dependencies: pydantic, numpy
System role: Contract between the pipeline and the L1 solver
"""

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from seqdr.configs.solver import SolverSettings


class SolverConfig(BaseModel):
    """Settings for one L1-penalized solve.

    The pipeline reuses one SolverConfig for every fold and overrides ``lam``
    per stage.
    """

    model_config = ConfigDict(frozen=True)

    lam: float = Field(default=0.0, ge=0.0, description="L1 penalty weight lambda")
    max_iter: int = Field(default=5000, ge=1, description="Iteration cap")
    tol: float = Field(default=1e-8, gt=0.0, description="KKT violation tolerance")
    backtrack_shrink: float = Field(default=0.5, gt=0.0, lt=1.0)
    init_step: float = Field(default=1.0, gt=0.0)
    penalize_intercept: bool = Field(
        default=True,
        description="Penalize coordinate 0 (the constant column) like the others",
    )
    warm_start: tuple[float, ...] | None = Field(default=None, description="Starting point")

    @classmethod
    def from_settings(cls, settings: SolverSettings) -> "SolverConfig":
        """Build a config from environment-backed solver settings."""
        return cls(
            max_iter=settings.max_iter,
            tol=settings.tol,
            backtrack_shrink=settings.backtrack_shrink,
            init_step=settings.init_step,
            penalize_intercept=settings.penalize_intercept,
        )


@dataclass(frozen=True, eq=False)
class SolveResult:
    """Outcome of one solve.

    ``objective_path`` holds the penalized objective at the start point and
    after each accepted iteration.
    """

    coef: np.ndarray
    iterations: int
    kkt_violation: float
    converged: bool
    saturated: bool
    lam: float
    objective_path: np.ndarray

    @property
    def objective(self) -> float:
        return float(self.objective_path[-1])
