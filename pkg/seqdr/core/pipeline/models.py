"""
Estimator choice.

Dependencies: pydantic
System role: Declarative description of one estimator configuration
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, NonNegativeFloat

from seqdr.configs.settings import Settings
from seqdr.core.model_core.types import OverlapConfig
from seqdr.core.optim.models import SolverConfig


class NuisanceFamily(str, Enum):
    """Which losses back the nuisance fits."""

    MOMENT_TARGETED = "moment"
    BASELINE = "baseline"


class EstimatorChoice(BaseModel):
    """Nuisance family, penalty policy, overlap handling and solver settings."""

    model_config = ConfigDict(frozen=True)

    name: str | None = Field(default=None, description="Label used in study tables")
    nuisance_family: NuisanceFamily = Field(default=NuisanceFamily.MOMENT_TARGETED)
    lambda_scales: tuple[PositiveFloat, PositiveFloat, PositiveFloat, PositiveFloat] = Field(
        default=(1.0, 1.0, 0.5, 0.5),
        description="Constants c for the gamma, delta, alpha and beta penalties",
    )
    lambda_override: (
        tuple[NonNegativeFloat, NonNegativeFloat, NonNegativeFloat, NonNegativeFloat] | None
    ) = Field(
        default=None,
        description="Fixed per-stage lambdas, bypassing the rate-based default",
    )
    lambda_grid: tuple[PositiveFloat, ...] | None = Field(
        default=None,
        description="Candidate constants c scored on a holdout quarter of each subsample",
    )
    overlap: OverlapConfig = Field(default_factory=OverlapConfig)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    strict: bool = Field(default=False, description="Raise on non-converged stages")

    @property
    def label(self) -> str:
        return self.name or self.nuisance_family.value

    @classmethod
    def from_settings(
        cls,
        settings: Settings,
        nuisance_family: NuisanceFamily = NuisanceFamily.MOMENT_TARGETED,
        **overrides: object,
    ) -> "EstimatorChoice":
        """
        Build a choice from environment-backed defaults.

        Args:
            settings: Application settings
            nuisance_family: Loss family
            **overrides: Field values taking precedence over the settings

        Returns:
            EstimatorChoice: Validated choice
        """
        estimation = settings.estimation
        fields: dict[str, object] = {
            "nuisance_family": nuisance_family,
            "lambda_scales": estimation.lambda_scales,
            "overlap": OverlapConfig(
                c0=estimation.overlap_c0,
                clip_propensities=estimation.clip_propensities,
            ),
            "solver": SolverConfig.from_settings(settings.solver),
            "strict": estimation.strict,
        }
        fields.update(overrides)
        return cls.model_validate(fields)
