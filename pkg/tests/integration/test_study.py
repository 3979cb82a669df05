"""Integration tests for the Monte Carlo study harness."""

import numpy as np
import pytest

from seqdr.core.exceptions import StudyFailureError
from seqdr.core.pipeline import EstimatorChoice, NuisanceFamily
from seqdr.evaluation import plan_seed, replication_seed, run_study
from seqdr.models.scenario import ScenarioSpec
from seqdr.models.study import StudyConfig

SMALL = {"d1": 6, "d2": 4, "s_gamma": 3, "s_delta": 3, "s_alpha": 3, "s_beta": 3}
MOMENT = EstimatorChoice(name="moment")
BASELINE = EstimatorChoice(name="baseline", nuisance_family=NuisanceFamily.BASELINE)


def _config(**overrides) -> StudyConfig:
    fields = {
        "scenario": ScenarioSpec(n=300, **SMALL),
        "estimators": [MOMENT, BASELINE],
        "replications": 3,
        "base_seed": 17,
        "oracle_population": 0,
    }
    fields.update(overrides)
    return StudyConfig(**fields)


def _thetas(result, estimator: str) -> list[float]:
    return [record.theta_hat for record in result.records if record.estimator == estimator]


class TestSeeds:
    """Tests for replication seed derivation."""

    def test_seeds_differ_across_replications_and_roles(self) -> None:
        """Data and plan seeds are distinct streams."""
        seeds = {replication_seed(0, r) for r in range(50)}
        assert len(seeds) == 50
        assert replication_seed(0, 3) != plan_seed(0, 3)
        assert replication_seed(0, 3) == replication_seed(0, 3)


class TestRunStudy:
    """Tests for run_study."""

    def test_deterministic(self) -> None:
        """The same config yields identical records."""
        assert run_study(_config()).records == run_study(_config()).records

    def test_parallelism_does_not_change_results(self) -> None:
        """Process parallelism reproduces the sequential records."""
        assert run_study(_config(), parallelism=1).records == run_study(_config(), parallelism=2).records

    def test_adding_an_estimator_leaves_others_unchanged(self) -> None:
        """Each estimator's results depend only on its own choice and the replication seeds."""
        alone = run_study(_config(estimators=[MOMENT]))
        together = run_study(_config(estimators=[BASELINE, MOMENT]))
        assert _thetas(alone, "moment") == _thetas(together, "moment")

    def test_single_replication(self) -> None:
        """R = 1 gives a summary without an empirical spread."""
        result = run_study(_config(replications=1, estimators=[MOMENT]))
        summary = result.summary("moment")
        assert summary.replications == 1
        assert summary.empirical_sd == 0.0
        assert summary.sigma_ratio is None

    def test_summary_fields(self) -> None:
        """Summaries follow the estimator order and the target is the (1,1) mean."""
        result = run_study(_config())
        assert [summary.estimator for summary in result.summaries] == ["moment", "baseline"]
        assert result.theta_true == pytest.approx(1.5)
        assert result.target == "1,1"
        assert len(result.records) == 6
        assert all(0.0 <= summary.coverage <= 1.0 for summary in result.summaries)

    def test_duplicate_labels_are_disambiguated(self) -> None:
        """Repeated estimator labels get their position appended."""
        result = run_study(_config(estimators=[MOMENT, MOMENT], replications=1))
        assert [summary.estimator for summary in result.summaries] == ["moment#0", "moment#1"]

    def test_contrast_target(self) -> None:
        """A contrast study targets the difference of two counterfactual means."""
        result = run_study(_config(contrast={"a1_target": 0, "a2_target": 0}, estimators=[MOMENT]))
        assert result.target == "1,1 - 0,0"
        assert result.theta_true == pytest.approx(2.5)

    def test_nuisance_errors_against_oracle(self) -> None:
        """With an oracle population every record carries per-stage errors."""
        result = run_study(_config(oracle_population=50_000, replications=2))
        for record in result.records:
            assert set(record.nuisance_errors) == {"gamma", "delta", "alpha", "beta"}
        assert set(result.summary("moment").nuisance_errors) == {"gamma", "delta", "alpha", "beta"}

    def test_too_small_samples_fail_the_study(self) -> None:
        """Every replication failing exceeds the failure threshold."""
        with pytest.raises(StudyFailureError) as exc_info:
            run_study(_config(scenario=ScenarioSpec(n=10, **SMALL)))
        assert exc_info.value.details["failed"] == 6
        assert "SizingError" in exc_info.value.details["first_failure"]


FULL_SIZE_REPLICATIONS = 300
BAND = (0.91, 0.99)


@pytest.fixture(scope="module")
def all_correct_study():
    """Moment-targeted study at N = 2000, d1 = d2 = 100, sparsity 4, K = 2."""
    config = _config(scenario=ScenarioSpec(), estimators=[MOMENT], replications=FULL_SIZE_REPLICATIONS)
    return run_study(config, parallelism=4)


@pytest.mark.slow
class TestStatisticalBehaviour:
    """Full-size Monte Carlo runs of the acceptance behaviour."""

    def test_coverage_and_bias_when_correct(self, all_correct_study) -> None:
        """Coverage is near nominal and the bias is within three replication standard errors."""
        summary = all_correct_study.summary("moment")
        assert summary.failures == 0
        assert BAND[0] <= summary.coverage <= BAND[1]
        assert abs(summary.bias) < 3.0 * summary.bias_se

    def test_sigma_matches_empirical_spread(self, all_correct_study) -> None:
        """Mean sigma_hat over the empirical sd of sqrt(N) theta_hat lies in [0.85, 1.15]."""
        assert 0.85 <= all_correct_study.summary("moment").sigma_ratio <= 1.15

    @pytest.mark.parametrize("pattern", ["CAN_a", "CAN_b", "CAN_c"])
    def test_coverage_under_pattern(self, pattern: str) -> None:
        """Coverage stays in band when one model per time point is misspecified."""
        config = _config(
            scenario=ScenarioSpec.for_pattern(pattern),
            estimators=[MOMENT],
            replications=FULL_SIZE_REPLICATIONS,
        )
        summary = run_study(config, parallelism=4).summary("moment")
        assert BAND[0] <= summary.coverage <= BAND[1]

    def test_crossed_pattern_against_baseline(self) -> None:
        """Under CAN_d the moment-targeted interval covers and the baseline is reported alongside."""
        config = _config(
            scenario=ScenarioSpec.for_pattern("CAN_d"),
            estimators=[MOMENT, BASELINE],
            replications=FULL_SIZE_REPLICATIONS,
        )
        result = run_study(config, parallelism=4)
        moment = result.summary("moment")
        baseline = result.summary("baseline")
        assert BAND[0] <= moment.coverage <= BAND[1]
        assert baseline.replications > 0
        assert np.isfinite(baseline.rmse)
        assert 0.0 <= baseline.coverage <= 1.0

    def test_nuisance_errors_shrink_with_sample_size(self) -> None:
        """Median gamma and beta errors against the pseudo-true values fall from N = 500 to 2000 to 8000."""
        medians = []
        for n in (500, 2000, 8000):
            config = _config(
                scenario=ScenarioSpec(n=n),
                estimators=[MOMENT],
                replications=50,
                oracle_population=200_000,
            )
            medians.append(run_study(config, parallelism=4).summary("moment").nuisance_errors)
        for stage in ("gamma", "beta"):
            errors = [median[stage] for median in medians]
            assert errors[0] > errors[1] > errors[2], f"{stage}: {errors}"

    def test_null_effect_coverage(self) -> None:
        """With no effect and no covariate shift the (1,1) - (0,0) interval covers zero near nominally."""
        scenario = ScenarioSpec(n=2000, treatment_effect=0.0, covariate_shift=0.0, **SMALL)
        config = _config(
            scenario=scenario,
            estimators=[MOMENT],
            replications=FULL_SIZE_REPLICATIONS,
            contrast={"a1_target": 0, "a2_target": 0},
        )
        result = run_study(config, parallelism=4)
        assert result.theta_true == pytest.approx(0.0, abs=3.0 * result.mc_se + 1e-12)
        summary = result.summary("moment")
        assert BAND[0] <= summary.coverage <= BAND[1]
        assert abs(summary.bias) < 3.0 * summary.bias_se + 3.0 * result.mc_se
