"""Tests for sequential nuisance fitting."""

from dataclasses import replace

import numpy as np
import pytest
from scipy.special import expit, logit

from seqdr.core.exceptions import (
    ConvergenceError,
    DegenerateSubsampleError,
    InvalidArgumentError,
    InvalidStartError,
)
from seqdr.core.losses import LossKind, build_problem
from seqdr.core.model_core.types import Dataset
from seqdr.core.optim import SolverConfig, kkt_check, solve
from seqdr.core.pipeline import EstimatorChoice, NuisanceFamily, fit_nuisances, make_plan
from seqdr.core.pipeline.plan import STAGES
from tests.helpers import random_dataset

MOMENT = EstimatorChoice()
BASELINE = EstimatorChoice(nuisance_family=NuisanceFamily.BASELINE)


@pytest.fixture
def medium_dataset() -> Dataset:
    return random_dataset(np.random.default_rng(5), n=800, d1=3, d2=2)


class TestFitNuisances:
    """Tests for fit_nuisances."""

    def test_shapes_and_stage_order(self, medium_dataset) -> None:
        """Coefficients have the stage dimensions and diagnostics follow stage order."""
        plan = make_plan(medium_dataset.n, 2, seed=1)
        fit = fit_nuisances(medium_dataset, plan, 0, MOMENT)
        assert fit.params.gamma.shape == (3,)
        assert fit.params.delta.shape == (5,)
        assert fit.params.alpha.shape == (5,)
        assert fit.params.beta.shape == (3,)
        assert [stage.stage for stage in fit.stages] == list(STAGES)
        assert [stage.kind for stage in fit.stages] == ["L1_ps1", "L2_ps2", "L3_or2", "L4_or1"]
        assert all(stage.lam > 0 for stage in fit.stages)

    @pytest.mark.parametrize("choice", [MOMENT, BASELINE])
    def test_each_stage_is_certified(self, medium_dataset, choice: EstimatorChoice) -> None:
        """Every stage coefficient satisfies the KKT conditions of its own problem."""
        plan = make_plan(medium_dataset.n, 2, seed=1)
        fit = fit_nuisances(medium_dataset, plan, 1, choice)
        fitted = {stage: fit.params.stage(stage) for stage in STAGES}
        for stage_fit in fit.stages:
            kind = LossKind(stage_fit.kind)
            rows = medium_dataset.subset(plan.subsamples[1].group(stage_fit.stage))
            problem = build_problem(
                kind, rows, {name: fitted[name] for name in kind.frozen_names}, overlap=choice.overlap
            )
            assert stage_fit.converged
            assert stage_fit.n_rows == rows.n
            assert kkt_check(problem, fitted[stage_fit.stage], stage_fit.lam) <= choice.solver.tol

    def test_baseline_unpenalized_outcome_is_least_squares(self, medium_dataset) -> None:
        """Base_or2 at lambda 0 is OLS on the doubly treated rows of the alpha group."""
        plan = make_plan(medium_dataset.n, 2, seed=3)
        choice = BASELINE.model_copy(update={"lambda_override": (0.0, 0.0, 0.0, 0.0)})
        fit = fit_nuisances(medium_dataset, plan, 0, choice)

        rows = medium_dataset.subset(plan.subsamples[0].alpha)
        treated = (rows.a1 * rows.a2) == 1.0
        expected, *_ = np.linalg.lstsq(rows.s_bar[treated], rows.y[treated], rcond=None)
        np.testing.assert_allclose(fit.params.alpha, expected, atol=1e-6)
        assert fit.lambdas == (0.0, 0.0, 0.0, 0.0)

    @pytest.mark.parametrize("choice", [MOMENT, BASELINE])
    def test_intercept_only_propensity_is_logit_of_share(self, choice: EstimatorChoice) -> None:
        """With S1 = 1 the time-1 propensity fit is the logit of the treated share."""
        rng = np.random.default_rng(17)
        n = 320
        s2 = rng.standard_normal((n, 2))
        a1 = (rng.random(n) < 0.6).astype(float)
        a2 = (rng.random(n) < expit(s2[:, 0])).astype(float)
        data = Dataset(y=rng.standard_normal(n), a1=a1, a2=a2, s1=np.ones((n, 1)), s2=s2)
        plan = make_plan(n, 2, seed=0)

        fit = fit_nuisances(data, plan, 0, choice)

        share = float(np.mean(a1[plan.subsamples[0].gamma]))
        assert fit.stages[0].lam == 0.0
        assert fit.params.gamma[0] == pytest.approx(float(logit(share)), abs=1e-6)

    def test_outcome_does_not_reach_propensities(self, medium_dataset) -> None:
        """Changing Y leaves gamma and delta untouched but moves alpha and beta."""
        plan = make_plan(medium_dataset.n, 2, seed=2)
        shifted = medium_dataset.with_outcome(medium_dataset.y * 2.0 + 1.0)
        first = fit_nuisances(medium_dataset, plan, 0, MOMENT)
        second = fit_nuisances(shifted, plan, 0, MOMENT)
        np.testing.assert_array_equal(first.params.gamma, second.params.gamma)
        np.testing.assert_array_equal(first.params.delta, second.params.delta)
        assert not np.array_equal(first.params.alpha, second.params.alpha)
        assert not np.array_equal(first.params.beta, second.params.beta)

    def test_later_stages_depend_on_earlier_fits(self, medium_dataset) -> None:
        """A heavier gamma penalty changes the downstream delta fit."""
        plan = make_plan(medium_dataset.n, 2, seed=2)
        light = fit_nuisances(
            medium_dataset, plan, 0, MOMENT.model_copy(update={"lambda_scales": (0.1, 1.0, 0.5, 0.5)})
        )
        heavy = fit_nuisances(
            medium_dataset, plan, 0, MOMENT.model_copy(update={"lambda_scales": (50.0, 1.0, 0.5, 0.5)})
        )
        assert not np.array_equal(light.params.gamma, heavy.params.gamma)
        assert not np.array_equal(light.params.delta, heavy.params.delta)

    def test_no_treated_rows(self, medium_dataset) -> None:
        """All A1 = 0 makes the gamma subsample degenerate."""
        data = medium_dataset.with_treatments(np.zeros(medium_dataset.n), medium_dataset.a2)
        with pytest.raises(DegenerateSubsampleError) as exc_info:
            fit_nuisances(data, make_plan(data.n, 2, seed=0), 0, MOMENT)
        assert exc_info.value.details["stage"] == "gamma"
        assert exc_info.value.details["fold"] == 0

    def test_no_doubly_treated_rows(self, medium_dataset) -> None:
        """A2 = 1 - A1 leaves the alpha subsample without doubly treated rows."""
        data = medium_dataset.with_treatments(medium_dataset.a1, 1.0 - medium_dataset.a1)
        with pytest.raises(DegenerateSubsampleError) as exc_info:
            fit_nuisances(data, make_plan(data.n, 2, seed=0), 0, BASELINE)
        assert exc_info.value.details["stage"] == "alpha"

    def test_strict_mode_raises_on_nonconvergence(self, medium_dataset) -> None:
        """Strict mode turns an unconverged stage into ConvergenceError."""
        plan = make_plan(medium_dataset.n, 2, seed=0)
        choice = EstimatorChoice(solver=SolverConfig(max_iter=1), strict=True, lambda_scales=(0.01,) * 4)
        with pytest.raises(ConvergenceError) as exc_info:
            fit_nuisances(medium_dataset, plan, 0, choice)
        assert exc_info.value.details["stage"] == "fold0:gamma"

    def test_lenient_mode_reports_nonconvergence(self, medium_dataset) -> None:
        """Without strict mode unconverged stages are listed and fitting continues."""
        plan = make_plan(medium_dataset.n, 2, seed=0)
        choice = EstimatorChoice(solver=SolverConfig(max_iter=1), lambda_scales=(0.01,) * 4)
        fit = fit_nuisances(medium_dataset, plan, 1, choice)
        assert "fold1:gamma" in fit.nonconverged_stages

    def test_holdout_grid_records_scale(self, medium_dataset) -> None:
        """A lambda grid picks one of its constants for every stage."""
        plan = make_plan(medium_dataset.n, 2, seed=0)
        grid = (0.1, 1.0)
        fit = fit_nuisances(medium_dataset, plan, 0, MOMENT.model_copy(update={"lambda_grid": grid}))
        assert all(stage.scale in grid for stage in fit.stages)

    def test_single_exposure_moment_skips_time2_stages(self) -> None:
        """Without S2 the moment family skips delta and alpha."""
        data = random_dataset(np.random.default_rng(8), n=400, d1=3, d2=0)
        fit = fit_nuisances(data, make_plan(data.n, 2, seed=0), 0, MOMENT)
        skipped = {stage.stage for stage in fit.stages if stage.skipped}
        assert skipped == {"delta", "alpha"}
        np.testing.assert_array_equal(fit.params.delta, np.zeros(3))
        np.testing.assert_array_equal(fit.params.alpha, np.zeros(3))
        assert fit.nonconverged_stages == []

    def test_single_exposure_baseline_keeps_outcome_stage(self) -> None:
        """Without S2 the baseline family skips only delta."""
        data = random_dataset(np.random.default_rng(8), n=400, d1=3, d2=0)
        fit = fit_nuisances(data, make_plan(data.n, 2, seed=0), 0, BASELINE)
        assert {stage.stage for stage in fit.stages if stage.skipped} == {"delta"}
        assert np.any(fit.params.alpha != 0.0)

    def test_plan_size_mismatch(self, medium_dataset) -> None:
        """A plan built for another sample size is rejected."""
        with pytest.raises(InvalidArgumentError):
            fit_nuisances(medium_dataset, make_plan(100, 2, seed=0), 0, MOMENT)

    def test_fold_out_of_range(self, medium_dataset) -> None:
        """Fold index must be below K."""
        with pytest.raises(InvalidArgumentError):
            fit_nuisances(medium_dataset, make_plan(medium_dataset.n, 2, seed=0), 2, MOMENT)


class TestRunawayStages:
    """Extreme earlier-stage fits stay inside the overlap bounds downstream."""

    @staticmethod
    def _runaway_delta(monkeypatch) -> None:
        def fake_solve(problem, config):
            result = solve(problem, config)
            if problem.kind is not LossKind.L2_PS2:
                return result
            coef = np.zeros(problem.dim)
            coef[0] = -1e3
            return replace(result, coef=coef)

        monkeypatch.setattr("seqdr.core.pipeline.nuisance.solve", fake_solve)

    def test_runaway_delta_is_clipped_downstream(self, medium_dataset, monkeypatch) -> None:
        """A delta driven to -1e3 leaves alpha and beta finite and reports clipped weights."""
        self._runaway_delta(monkeypatch)
        fit = fit_nuisances(medium_dataset, make_plan(medium_dataset.n, 2, seed=0), 0, MOMENT)
        assert np.all(np.isfinite(fit.params.alpha))
        assert np.all(np.isfinite(fit.params.beta))
        assert fit.clipped_weights > 0
        alpha_fit = fit.stages[2]
        assert alpha_fit.clipped > 0
        assert not alpha_fit.nonfinite

    def test_nonfinite_stage_is_a_diagnostic(self, medium_dataset, monkeypatch) -> None:
        """A stage whose loss is not finite at the start is reported instead of raised."""

        def failing_solve(problem, config):
            if problem.kind is LossKind.L3_OR2:
                raise InvalidStartError("not finite", {"kind": problem.kind.value})
            return solve(problem, config)

        monkeypatch.setattr("seqdr.core.pipeline.nuisance.solve", failing_solve)
        fit = fit_nuisances(medium_dataset, make_plan(medium_dataset.n, 2, seed=0), 1, MOMENT)
        alpha_fit = fit.stages[2]
        assert alpha_fit.nonfinite
        assert not alpha_fit.converged
        assert "fold1:alpha" in fit.nonconverged_stages
        np.testing.assert_array_equal(fit.params.alpha, np.zeros(medium_dataset.d))
        assert np.all(np.isfinite(fit.params.beta))

    def test_nonfinite_stage_raises_in_strict_mode(self, medium_dataset, monkeypatch) -> None:
        """Strict mode turns a non-finite stage into ConvergenceError."""

        def failing_solve(problem, config):
            raise InvalidStartError("not finite", {"kind": problem.kind.value})

        monkeypatch.setattr("seqdr.core.pipeline.nuisance.solve", failing_solve)
        with pytest.raises(ConvergenceError) as exc_info:
            fit_nuisances(
                medium_dataset,
                make_plan(medium_dataset.n, 2, seed=0),
                0,
                MOMENT.model_copy(update={"strict": True}),
            )
        assert exc_info.value.details["stage"] == "fold0:gamma"
