"""Tests for the scenario schema."""

import pytest
from pydantic import ValidationError

from seqdr.core.exceptions import InvalidScenarioError
from seqdr.models.scenario import PATTERNS, CoefficientSet, MisspecFlags, ScenarioSpec


class TestScenarioSpec:
    """Tests for ScenarioSpec validation."""

    def test_defaults(self) -> None:
        """Default scenario is high-dimensional and correctly specified."""
        spec = ScenarioSpec()
        assert (spec.n, spec.d1, spec.d2) == (2000, 100, 100)
        assert spec.misspec.names() == ()

    @pytest.mark.parametrize(
        ("flags", "rule"),
        [(MisspecFlags(ps1=True, or1=True), "time1"), (MisspecFlags(ps2=True, or2=True), "time2")],
    )
    def test_both_models_of_one_time_point(self, flags: MisspecFlags, rule: str) -> None:
        """Misspecifying propensity and outcome at one time point is rejected."""
        with pytest.raises(InvalidScenarioError) as exc_info:
            ScenarioSpec(misspec=flags)
        assert exc_info.value.details["rule"] == rule

    def test_allow_invalid(self) -> None:
        """allow_invalid lifts the double-misspecification rule."""
        spec = ScenarioSpec(misspec=MisspecFlags(ps1=True, or1=True), allow_invalid=True)
        assert spec.misspec.names() == ("ps1", "or1")

    def test_sparsity_beyond_dimension(self) -> None:
        """A sparsity count larger than its block is rejected."""
        with pytest.raises(InvalidScenarioError):
            ScenarioSpec(d1=5, d2=4, s_alpha=5)

    def test_coefficient_length(self) -> None:
        """Explicit coefficients must match the dimensions."""
        coef = CoefficientSet(gamma=(0.0,) * 5, delta=(0.0,) * 8, alpha=(0.0,) * 9)
        with pytest.raises(InvalidScenarioError) as exc_info:
            ScenarioSpec(d1=5, d2=4, s_gamma=2, s_delta=2, s_alpha=2, s_beta=2, coef_true=coef)
        assert "delta" in exc_info.value.message

    @pytest.mark.parametrize("field", [{"d1": 2}, {"d2": 1}, {"n": 0}, {"noise_sd": 0.0}])
    def test_field_bounds(self, field: dict) -> None:
        """Out-of-range fields fail pydantic validation."""
        with pytest.raises(ValidationError):
            ScenarioSpec(**field)

    def test_json_round_trip(self, small_scenario) -> None:
        """A scenario survives JSON serialization."""
        assert ScenarioSpec.model_validate_json(small_scenario.model_dump_json()) == small_scenario


class TestPatterns:
    """Tests for the named robustness patterns."""

    @pytest.mark.parametrize("name", sorted(PATTERNS))
    def test_every_pattern_builds(self, name: str) -> None:
        """Each pattern yields a valid scenario carrying its flags."""
        spec = ScenarioSpec.for_pattern(name, d1=6, d2=4, s_gamma=3, s_delta=3, s_alpha=3, s_beta=3)
        assert spec.misspec == PATTERNS[name]
        assert spec.pattern == name

    def test_invalid_pattern_is_allowed_explicitly(self) -> None:
        """The invalid pattern misspecifies both time-1 models."""
        spec = ScenarioSpec.for_pattern("invalid")
        assert spec.allow_invalid
        assert spec.misspec.ps1 and spec.misspec.or1

    def test_unknown_pattern(self) -> None:
        """Unknown names are rejected with the known list."""
        with pytest.raises(InvalidScenarioError) as exc_info:
            ScenarioSpec.for_pattern("CAN_z")
        assert "CAN_a" in exc_info.value.details["known"]

    def test_population_key_ignores_seed_and_size(self, small_scenario) -> None:
        """Seed and n do not change the population."""
        other = small_scenario.model_copy(update={"seed": 99, "n": 50})
        assert other.population_key() == small_scenario.population_key()
        shifted = small_scenario.model_copy(update={"treatment_effect": 2.0})
        assert shifted.population_key() != small_scenario.population_key()
