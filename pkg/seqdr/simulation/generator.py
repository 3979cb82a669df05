"""
Scenario data generator and ground truth.

Dependencies: numpy
System role: Synthetic datasets with known counterfactual means
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from seqdr.configs import get_settings
from seqdr.core.model_core.types import Dataset, NuisanceParams, TreatmentPath
from seqdr.models.scenario import ScenarioSpec
from seqdr.models.truth import TruthDocument
from seqdr.observability import get_logger
from seqdr.simulation.mechanisms import PATH_LABELS, TrueMechanisms

logger = get_logger(__name__)

# Fixed stream for truth simulation so the truth never depends on a dataset seed
TRUTH_STREAM = 20_240_917
TRUTH_CHUNK = 200_000


@dataclass(frozen=True, eq=False)
class GroundTruth:
    """Counterfactual means of a scenario and its generating coefficients.

    ``oracle_eta`` holds (gamma0, delta0, alpha0, beta0) for the (1,1) path;
    ``exact_components`` lists the stages where these coincide with the
    moment-targeted population targets because that working model is correct.
    """

    theta_true: float
    mc_se: float
    theta_paths: dict[str, float]
    mc_se_paths: dict[str, float]
    oracle_eta: NuisanceParams
    exact_components: tuple[str, ...] = field(default=())

    def theta(self, path: TreatmentPath) -> float:
        return self.theta_paths[path.label]

    def se(self, path: TreatmentPath) -> float:
        return self.mc_se_paths[path.label]

    def to_document(self) -> TruthDocument:
        return TruthDocument(
            theta_true=self.theta_true,
            mc_se=self.mc_se,
            theta_paths=dict(self.theta_paths),
            mc_se_paths=dict(self.mc_se_paths),
            oracle_eta=self.oracle_eta.to_dict(),
            exact_components=list(self.exact_components),
        )


def _exact_components(spec: ScenarioSpec) -> tuple[str, ...]:
    flags = spec.misspec
    exact = []
    if not flags.ps1:
        exact.append("gamma")
    if not flags.ps2:
        exact.append("delta")
    if not flags.or2:
        exact.append("alpha")
    if not flags.or1 and not (flags.ps2 and flags.or2):
        exact.append("beta")
    return tuple(exact)


def _simulate_means(mechanisms: TrueMechanisms, draws: int) -> tuple[dict[str, float], dict[str, float]]:
    rng = np.random.default_rng(TRUTH_STREAM)
    totals = {label: [] for label in PATH_LABELS}
    remaining = draws
    while remaining > 0:
        size = min(TRUTH_CHUNK, remaining)
        population = mechanisms.draw(size, rng)
        for label in PATH_LABELS:
            totals[label].append(population.potential_outcomes[label])
        remaining -= size
    means, errors = {}, {}
    for label, chunks in totals.items():
        values = np.concatenate(chunks)
        means[label] = float(np.mean(values))
        errors[label] = float(np.std(values, ddof=1) / np.sqrt(values.shape[0]))
    return means, errors


@lru_cache(maxsize=32)
def _truth_for(population_key: str, draws: int) -> GroundTruth:
    spec = ScenarioSpec.model_validate_json(population_key)
    mechanisms = TrueMechanisms.from_spec(spec)
    if spec.misspec.or1 or spec.misspec.or2:
        means, errors = _simulate_means(mechanisms.windowed(), draws)
        logger.debug("truth_simulated", draws=draws, theta=means["1,1"], mc_se=errors["1,1"])
    else:
        means = {label: mechanisms.theta_closed_form(TreatmentPath.parse(label)) for label in PATH_LABELS}
        errors = {label: 0.0 for label in PATH_LABELS}
    return GroundTruth(
        theta_true=means["1,1"],
        mc_se=errors["1,1"],
        theta_paths=means,
        mc_se_paths=errors,
        oracle_eta=mechanisms.generating_params(),
        exact_components=_exact_components(spec),
    )


def ground_truth(spec: ScenarioSpec, truth_draws: int | None = None) -> GroundTruth:
    """
    Counterfactual means of a scenario.

    Closed form through the linear outcome chain; when either outcome model is
    nonlinear, a ``truth_draws`` simulation on the active covariate window
    (default from settings). Cached per population (seed and n do not matter).

    Args:
        spec: Scenario
        truth_draws: Simulation size for nonlinear outcome chains

    Returns:
        GroundTruth: Truth for all four paths
    """
    draws = truth_draws or get_settings().study.truth_draws
    return _truth_for(spec.population_key(), draws)


def sample_dataset(spec: ScenarioSpec) -> Dataset:
    """Draw the scenario's dataset of size ``spec.n`` from seed ``spec.seed``."""
    mechanisms = TrueMechanisms.from_spec(spec)
    return mechanisms.sample(spec.n, np.random.default_rng(spec.seed))


def generate(spec: ScenarioSpec, truth_draws: int | None = None) -> tuple[Dataset, GroundTruth]:
    """
    Draw a dataset and its ground truth.

    Args:
        spec: Scenario (validated on construction)
        truth_draws: Simulation size for nonlinear outcome chains

    Returns:
        tuple: (Dataset, GroundTruth)
    """
    data = sample_dataset(spec)
    truth = ground_truth(spec, truth_draws)
    logger.debug(
        "scenario_generated",
        n=data.n,
        d1=data.d1,
        d2=data.d2,
        misspec=list(spec.misspec.names()),
        theta=truth.theta_true,
    )
    return data, truth
