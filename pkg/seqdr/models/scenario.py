"""
Simulation scenario schema.

Dependencies: pydantic
System role: JSON contract of the simulate and oracle commands and of study configs
"""

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from seqdr.core.exceptions import InvalidScenarioError


class MisspecFlags(BaseModel):
    """Which true mechanisms lie outside the logistic/linear working class."""

    model_config = ConfigDict(frozen=True)

    ps1: bool = Field(default=False, description="Time-1 propensity is non-logistic in S1")
    ps2: bool = Field(default=False, description="Time-2 propensity is non-logistic in (S1, S2)")
    or2: bool = Field(default=False, description="Time-2 outcome is nonlinear in (S1, S2)")
    or1: bool = Field(default=False, description="Nested time-1 outcome is nonlinear in S1")

    def names(self) -> tuple[str, ...]:
        return tuple(name for name in ("ps1", "ps2", "or2", "or1") if getattr(self, name))


class CoefficientSet(BaseModel):
    """Generating coefficients; beta is implied by the covariate mechanism."""

    model_config = ConfigDict(frozen=True)

    gamma: tuple[float, ...] = Field(description="Time-1 propensity coefficients, length d1")
    delta: tuple[float, ...] = Field(description="Time-2 propensity coefficients, length d1 + d2")
    alpha: tuple[float, ...] = Field(description="Time-2 outcome coefficients, length d1 + d2")


# Robustness patterns: which mechanisms are misspecified
PATTERNS: dict[str, MisspecFlags] = {
    "all_correct": MisspecFlags(),
    "CAN_a": MisspecFlags(ps1=True, ps2=True),
    "CAN_b": MisspecFlags(or1=True, or2=True),
    "CAN_c": MisspecFlags(ps1=True, or2=True),
    "CAN_d": MisspecFlags(ps2=True, or1=True),
    "invalid": MisspecFlags(ps1=True, or1=True),
}


class ScenarioSpec(BaseModel):
    """Synthetic data-generating process with known truth."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(default=2000, ge=1, description="Sample size")
    d1: int = Field(default=100, ge=3, description="Time-1 covariates including the constant")
    d2: int = Field(default=100, ge=2, description="Time-2 covariates")
    s_gamma: int = Field(default=4, ge=1, description="Nonzeros of gamma (including intercept)")
    s_delta: int = Field(default=4, ge=1, description="Nonzeros of delta (including intercept)")
    s_alpha: int = Field(default=4, ge=1, description="Nonzeros in the S2 block of alpha")
    s_beta: int = Field(default=4, ge=1, description="Nonzeros in the S1 block of alpha")
    coef_true: CoefficientSet | None = Field(
        default=None, description="Explicit generating coefficients (defaults are built from the sparsities)"
    )
    noise_sd: float = Field(default=1.0, gt=0.0, description="Outcome noise standard deviation")
    misspec: MisspecFlags = Field(default_factory=MisspecFlags)
    seed: int = Field(default=0, ge=0)
    allow_invalid: bool = Field(
        default=False,
        description="Permit both models of one time point to be misspecified",
    )
    overlap_c0: float = Field(default=0.02, gt=0.0, lt=0.5, description="Propensity truncation")
    treatment_effect: float = Field(
        default=1.0, description="Outcome drop per untreated time point"
    )
    covariate_shift: float = Field(
        default=0.5, description="Shift of S2_0 caused by A1 = 1"
    )
    covariate_loading: float = Field(
        default=0.5, description="Loading of S2_j on S1_j"
    )
    misspec_strength: float = Field(
        default=1.0, ge=0.0, description="Scale of the nonlinear outcome and covariate terms"
    )
    propensity_misspec_strength: float = Field(
        default=0.5, ge=0.0, description="Scale of the nonlinear propensity terms"
    )
    pattern: str | None = Field(default=None, description="Named robustness pattern, if any")

    @model_validator(mode="after")
    def _check_rules(self) -> "ScenarioSpec":
        flags = self.misspec
        if not self.allow_invalid:
            if flags.ps1 and flags.or1:
                raise InvalidScenarioError(
                    "Time-1 propensity and outcome models are both misspecified",
                    {"rule": "time1", "misspec": list(flags.names())},
                )
            if flags.ps2 and flags.or2:
                raise InvalidScenarioError(
                    "Time-2 propensity and outcome models are both misspecified",
                    {"rule": "time2", "misspec": list(flags.names())},
                )
        d = self.d1 + self.d2
        limits = {
            "s_gamma": (self.s_gamma, self.d1),
            "s_delta": (self.s_delta, d),
            "s_alpha": (self.s_alpha, self.d2),
            "s_beta": (self.s_beta, self.d1),
        }
        for name, (count, dim) in limits.items():
            if count > dim:
                raise InvalidScenarioError(
                    f"{name}={count} exceeds its dimension {dim}", {"rule": "sparsity"}
                )
        if self.coef_true is not None:
            lengths = {
                "gamma": (len(self.coef_true.gamma), self.d1),
                "delta": (len(self.coef_true.delta), d),
                "alpha": (len(self.coef_true.alpha), d),
            }
            for name, (got, want) in lengths.items():
                if got != want:
                    raise InvalidScenarioError(
                        f"coef_true.{name} has length {got}, expected {want}",
                        {"rule": "coef_true"},
                    )
        return self

    @classmethod
    def for_pattern(cls, name: str, **overrides: Any) -> "ScenarioSpec":
        """
        Scenario for a named robustness pattern.

        Args:
            name: all_correct, CAN_a, CAN_b, CAN_c, CAN_d or invalid
            **overrides: Other ScenarioSpec fields

        Returns:
            ScenarioSpec: Scenario with the pattern's misspecification flags

        Raises:
            InvalidScenarioError: On an unknown pattern name
        """
        if name not in PATTERNS:
            raise InvalidScenarioError(
                f"Unknown pattern {name!r}", {"known": sorted(PATTERNS)}
            )
        fields: dict[str, Any] = {"misspec": PATTERNS[name], "pattern": name}
        if name == "invalid":
            fields["allow_invalid"] = True
        fields.update(overrides)
        return cls(**fields)

    def population_key(self) -> str:
        """JSON of everything that shapes the distribution (seed and n excluded)."""
        return self.model_dump_json(exclude={"seed", "n", "pattern"})
