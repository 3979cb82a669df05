"""
Ground-truth document.

Dependencies: pydantic
System role: JSON export of simulated truth next to a generated dataset
"""

from pydantic import BaseModel, Field


class TruthDocument(BaseModel):
    """Serialized GroundTruth."""

    theta_true: float = Field(description="Counterfactual mean of the (1,1) path")
    mc_se: float = Field(ge=0.0, description="Simulation standard error of theta_true")
    theta_paths: dict[str, float] = Field(description="Counterfactual mean per path 'a1,a2'")
    mc_se_paths: dict[str, float]
    oracle_eta: dict[str, list[float]] = Field(
        description="Generating coefficients gamma, delta, alpha and implied beta"
    )
    exact_components: list[str] = Field(
        description="Stages whose generating coefficients are also the population targets"
    )


class OracleDocument(BaseModel):
    """Pseudo-true nuisance coefficients for a scenario."""

    family: str
    path: str
    n_pop: int
    gamma: list[float]
    delta: list[float]
    alpha: list[float]
    beta: list[float]
