"""
Monte Carlo study schemas.

Dependencies: pydantic
System role: JSON contracts of the study command
"""

from pydantic import BaseModel, ConfigDict, Field

from seqdr.core.model_core.types import TreatmentPath
from seqdr.core.pipeline.models import EstimatorChoice
from seqdr.core.pipeline.plan import LeftoverPolicy
from seqdr.models.scenario import ScenarioSpec


class StudyConfig(BaseModel):
    """Scenario, estimators and replication settings of one study."""

    model_config = ConfigDict(frozen=True)

    scenario: ScenarioSpec
    estimators: list[EstimatorChoice] = Field(min_length=1)
    replications: int = Field(default=100, ge=1, description="Number of replications R")
    level: float = Field(default=0.95, gt=0.0, lt=1.0)
    base_seed: int = Field(default=0, ge=0)
    k_folds: int = Field(default=2, ge=2)
    leftover_policy: LeftoverPolicy = Field(default=LeftoverPolicy.ROUND_ROBIN)
    path: TreatmentPath = Field(default_factory=TreatmentPath)
    contrast: TreatmentPath | None = Field(
        default=None, description="Control path; when set the study targets path - contrast"
    )
    output_path: str | None = Field(default=None)
    parallelism: int | None = Field(
        default=None, ge=1, description="Worker processes (default from SEQDR_STUDY_PARALLELISM)"
    )
    oracle_population: int | None = Field(
        default=None,
        ge=0,
        description="Population size for nuisance-error targets (0 disables them)",
    )

    def estimator_labels(self) -> list[str]:
        """Estimator labels, suffixed with their position when a label repeats."""
        labels = [choice.label for choice in self.estimators]
        return [
            f"{label}#{i}" if labels.count(label) > 1 else label
            for i, label in enumerate(labels)
        ]


class ReplicationRecord(BaseModel):
    """One estimator's outcome in one replication."""

    replication: int
    estimator: str
    seed: int
    theta_hat: float | None = None
    sigma_hat: float | None = None
    ci_low: float | None = None
    ci_high: float | None = None
    covered: bool | None = None
    nuisance_errors: dict[str, float] = Field(default_factory=dict)
    nonconverged_stages: int = 0
    failure: str | None = Field(default=None, description="Error type and message if it failed")

    @property
    def failed(self) -> bool:
        return self.failure is not None


class EstimatorSummary(BaseModel):
    """Aggregated metrics of one estimator over the successful replications."""

    estimator: str
    nuisance_family: str
    replications: int = Field(description="Successful replications")
    failures: int
    bias: float
    rmse: float
    coverage: float = Field(ge=0.0, le=1.0)
    mean_ci_length: float
    mean_sigma_hat: float
    empirical_sd: float = Field(description="Standard deviation of theta_hat across replications")
    bias_se: float = Field(description="Replication standard error of the mean theta_hat")
    sigma_ratio: float | None = Field(
        default=None,
        description="Mean sigma_hat over the empirical sd of sqrt(N) theta_hat",
    )
    nuisance_errors: dict[str, float] = Field(
        default_factory=dict, description="Median L2 error per stage against eta*"
    )
    nonconverged_stages: int = 0


class StudyResult(BaseModel):
    """Full outcome of a study."""

    scenario: ScenarioSpec
    target: str = Field(description="Path, or 'path - contrast' for effects")
    theta_true: float
    mc_se: float
    level: float
    replications: int
    summaries: list[EstimatorSummary]
    records: list[ReplicationRecord]

    def summary(self, estimator: str) -> EstimatorSummary:
        for summary in self.summaries:
            if summary.estimator == estimator:
                return summary
        raise KeyError(estimator)


class ComparisonRow(BaseModel):
    """One estimator's metrics relative to the reference (first) estimator."""

    estimator: str
    nuisance_family: str
    bias: float
    rmse: float
    coverage: float
    mean_ci_length: float
    mean_sigma_hat: float
    rmse_ratio: float
    ci_length_ratio: float
    coverage_ratio: float
    abs_bias_ratio: float


class ComparisonTable(BaseModel):
    """Side-by-side comparison of the estimators of one study."""

    scenario_pattern: str | None
    level: float
    reference: str
    rows: list[ComparisonRow]
    moment_targeted_advantage: bool = Field(
        description="A moment-targeted estimator keeps nominal coverage while a baseline one loses it"
    )
