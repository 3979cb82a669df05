"""
Pseudo-true nuisance parameters.

Solves the four unpenalized population losses in sequence on one large draw
restricted to the active covariate window, then pads with zeros. The result
exists under misspecification too, where it differs from the generating
coefficients.

Dependencies: numpy
System role: Targets for nuisance-error metrics and oracle-injected estimates
"""

from functools import lru_cache

import numpy as np

from seqdr.configs import get_settings
from seqdr.core.exceptions import ConvergenceError, InvalidArgumentError
from seqdr.core.losses import build_problem
from seqdr.core.model_core.paths import relabel_for_path
from seqdr.core.model_core.types import NuisanceParams, TreatmentPath
from seqdr.core.optim import SolverConfig, solve
from seqdr.core.pipeline.models import NuisanceFamily
from seqdr.core.pipeline.nuisance import FAMILY_KINDS
from seqdr.core.pipeline.plan import STAGES
from seqdr.models.scenario import ScenarioSpec
from seqdr.observability import get_logger, summarize
from seqdr.simulation.mechanisms import TrueMechanisms

logger = get_logger(__name__)

ORACLE_STREAM = 20_240_918
ORACLE_SOLVER = SolverConfig(lam=0.0, max_iter=20_000, tol=1e-8)


@lru_cache(maxsize=32)
def _oracle_for(population_key: str, n_pop: int, family: str, path_label: str) -> NuisanceParams:
    spec = ScenarioSpec.model_validate_json(population_key)
    full = TrueMechanisms.from_spec(spec)
    window = full.windowed()
    population = window.draw(n_pop, np.random.default_rng(ORACLE_STREAM))
    data = relabel_for_path(population.dataset, TreatmentPath.parse(path_label))

    fitted: dict[str, np.ndarray] = {}
    for stage, kind in zip(STAGES, FAMILY_KINDS[NuisanceFamily(family)]):
        problem = build_problem(kind, data, {name: fitted[name] for name in kind.frozen_names})
        result = solve(problem, ORACLE_SOLVER)
        if not result.converged:
            raise ConvergenceError(
                stage=f"oracle:{stage}",
                kkt_violation=result.kkt_violation,
                details={"iterations": result.iterations, "n_pop": n_pop},
            )
        fitted[stage] = result.coef
    eta = NuisanceParams(**fitted)
    logger.debug(
        "oracle_solved",
        family=family,
        path=path_label,
        n_pop=n_pop,
        window=window.active_window(),
        **summarize(gamma=eta.gamma, delta=eta.delta, alpha=eta.alpha, beta=eta.beta),
    )
    return window.pad(eta, full.d1, full.d2)


def oracle_eta(
    spec: ScenarioSpec,
    n_pop: int | None = None,
    family: NuisanceFamily = NuisanceFamily.MOMENT_TARGETED,
    path: TreatmentPath | None = None,
) -> NuisanceParams:
    """
    Population targets eta* of the chosen loss family.

    Args:
        spec: Scenario
        n_pop: Population draw size (default from settings)
        family: Moment-targeted or baseline losses
        path: Treatment path the targets are coded for (default (1,1))

    Returns:
        NuisanceParams: eta* at the scenario's full dimensions

    Raises:
        ConvergenceError: If any population solve misses the KKT tolerance
    """
    n_pop = n_pop or get_settings().study.oracle_population
    if n_pop < 2:
        raise InvalidArgumentError("n_pop must be at least 2", field="n_pop")
    path = path or TreatmentPath()
    return _oracle_for(spec.population_key(), n_pop, NuisanceFamily(family).value, path.label)
