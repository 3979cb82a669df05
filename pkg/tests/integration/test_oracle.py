"""Integration tests for pseudo-true nuisance parameters."""

import numpy as np
import pytest

from seqdr.core.model_core import TreatmentPath
from seqdr.core.pipeline import EstimatorChoice, NuisanceFamily, estimate, make_plan
from seqdr.models.scenario import ScenarioSpec
from seqdr.simulation import generate, oracle_eta
from seqdr.simulation.mechanisms import TrueMechanisms

SMALL = {"d1": 6, "d2": 4, "s_gamma": 3, "s_delta": 3, "s_alpha": 3, "s_beta": 3}
N_POP = 100_000


class TestOracleEta:
    """Tests for oracle_eta."""

    def test_correct_models_recover_generating_coefficients(self) -> None:
        """Without misspecification the population targets are the generating coefficients."""
        spec = ScenarioSpec(**SMALL)
        eta = oracle_eta(spec, N_POP)
        truth = TrueMechanisms.from_spec(spec).generating_params()
        for stage in ("gamma", "delta", "alpha", "beta"):
            np.testing.assert_allclose(eta.stage(stage), truth.stage(stage), atol=0.05)

    def test_baseline_targets_agree_when_correct(self) -> None:
        """Both loss families share their targets under correct specification."""
        spec = ScenarioSpec(**SMALL)
        moment = oracle_eta(spec, N_POP, NuisanceFamily.MOMENT_TARGETED)
        baseline = oracle_eta(spec, N_POP, NuisanceFamily.BASELINE)
        np.testing.assert_allclose(moment.gamma, baseline.gamma, atol=0.05)
        np.testing.assert_allclose(moment.alpha, baseline.alpha, atol=0.05)

    def test_correct_time2_propensity_survives_wrong_time1_model(self) -> None:
        """Under CAN_c the time-2 propensity target is still the generating delta."""
        spec = ScenarioSpec.for_pattern("CAN_c", **SMALL)
        eta = oracle_eta(spec, N_POP)
        np.testing.assert_allclose(eta.delta, TrueMechanisms.from_spec(spec).delta, atol=0.05)

    def test_zero_outside_active_window(self) -> None:
        """Coefficients of columns outside the active window are exactly zero."""
        spec = ScenarioSpec(**SMALL)
        w1, w2 = TrueMechanisms.from_spec(spec).active_window()
        eta = oracle_eta(spec, N_POP)
        np.testing.assert_array_equal(eta.gamma[w1:], 0.0)
        np.testing.assert_array_equal(eta.alpha[w1 : spec.d1], 0.0)
        np.testing.assert_array_equal(eta.alpha[spec.d1 + w2 :], 0.0)

    def test_cached(self) -> None:
        """Repeated requests return the same object."""
        spec = ScenarioSpec(**SMALL)
        assert oracle_eta(spec, N_POP) is oracle_eta(spec.model_copy(update={"seed": 5}), N_POP)

    def test_control_path_targets(self) -> None:
        """Targets coded for (0,0) differ from the (1,1) ones."""
        spec = ScenarioSpec(**SMALL)
        treated = oracle_eta(spec, N_POP)
        control = oracle_eta(spec, N_POP, path=TreatmentPath(a1_target=0, a2_target=0))
        assert not np.allclose(treated.gamma, control.gamma)
        np.testing.assert_allclose(control.gamma, -treated.gamma, atol=0.05)


class TestOracleInjectedEstimate:
    """Scores evaluated at the population targets."""

    @staticmethod
    def _injected(spec: ScenarioSpec) -> tuple[float, float, float]:
        data, truth = generate(spec, truth_draws=400_000)
        eta = oracle_eta(spec, N_POP)
        report = estimate(data, TreatmentPath(), EstimatorChoice(), make_plan(data.n, 2, 0), nuisances=eta)
        return report.theta_hat - truth.theta_true, report.std_error, truth.mc_se

    @pytest.mark.parametrize("pattern", ["all_correct", "CAN_a", "CAN_b", "CAN_c", "CAN_d"])
    def test_centered_on_truth(self, pattern: str) -> None:
        """With eta* injected the estimate lands within four standard errors of theta."""
        error, std_error, mc_se = self._injected(
            ScenarioSpec.for_pattern(pattern, n=N_POP, seed=3, **SMALL)
        )
        assert abs(error) < 4.0 * std_error + 4.0 * mc_se

    def test_both_time1_models_wrong_is_biased(self) -> None:
        """Both time-1 models misspecified leave the injected estimate more than four standard errors off."""
        spec = ScenarioSpec.for_pattern(
            "invalid", n=N_POP, seed=3, propensity_misspec_strength=1.0, **SMALL
        )
        error, std_error, mc_se = self._injected(spec)
        assert abs(error) > 4.0 * std_error + 4.0 * mc_se
