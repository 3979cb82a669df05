"""
Monte Carlo replication engine.

Replication r draws its dataset from a seed derived from (base_seed, r) and its
cross-fitting plan from (base_seed, r, 1), so results do not depend on the
estimator list, the parallelism level or the execution order. Failed
replications are quarantined: counted, kept in the records, and excluded from
the metrics.

Dependencies: numpy, concurrent.futures
System role: Study-level orchestration behind the study command
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from seqdr.configs import get_settings
from seqdr.core.exceptions import ConvergenceError, SeqDRError, StudyFailureError
from seqdr.core.model_core.types import NuisanceParams
from seqdr.core.pipeline import estimate, estimate_dte, make_plan
from seqdr.evaluation.metrics import nuisance_errors, summarize_estimator
from seqdr.models.study import ReplicationRecord, StudyConfig, StudyResult
from seqdr.observability import get_logger
from seqdr.simulation import ground_truth, oracle_eta, sample_dataset

logger = get_logger(__name__)

_REPLICATION_ERRORS = (SeqDRError, ArithmeticError, np.linalg.LinAlgError)


def replication_seed(base_seed: int, replication: int) -> int:
    """Data seed of replication ``replication``."""
    state = np.random.SeedSequence([base_seed, replication]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def plan_seed(base_seed: int, replication: int) -> int:
    """Cross-fitting seed of replication ``replication``."""
    state = np.random.SeedSequence([base_seed, replication, 1]).generate_state(1, dtype=np.uint64)
    return int(state[0])


@dataclass(frozen=True, eq=False)
class StudyTarget:
    """Target value, its simulation error and per-family nuisance targets."""

    label: str
    theta: float
    mc_se: float
    oracles: dict[str, NuisanceParams]


def resolve_target(config: StudyConfig, oracle_population: int) -> StudyTarget:
    """
    Compute the study's target and, for single-path studies, the eta* of each
    estimator family.

    Args:
        config: Study configuration
        oracle_population: Population size for eta*; 0 skips nuisance targets

    Returns:
        StudyTarget: Truth used for bias and coverage
    """
    truth = ground_truth(config.scenario)
    if config.contrast is not None:
        theta = truth.theta(config.path) - truth.theta(config.contrast)
        mc_se = math.hypot(truth.se(config.path), truth.se(config.contrast))
        return StudyTarget(
            label=f"{config.path.label} - {config.contrast.label}",
            theta=theta,
            mc_se=mc_se,
            oracles={},
        )

    oracles: dict[str, NuisanceParams] = {}
    if oracle_population > 0:
        for family in dict.fromkeys(choice.nuisance_family for choice in config.estimators):
            try:
                oracles[family.value] = oracle_eta(
                    config.scenario, oracle_population, family, config.path
                )
            except ConvergenceError as e:
                logger.warning("oracle_unavailable", family=family.value, error=str(e))
    return StudyTarget(
        label=config.path.label,
        theta=truth.theta(config.path),
        mc_se=truth.se(config.path),
        oracles=oracles,
    )


def run_replication(config: StudyConfig, target: StudyTarget, replication: int) -> list[ReplicationRecord]:
    """
    Run every estimator on replication ``replication``.

    Args:
        config: Study configuration
        target: Truth and nuisance targets
        replication: Replication index r

    Returns:
        list[ReplicationRecord]: One record per estimator, in config order
    """
    seed = replication_seed(config.base_seed, replication)
    data = sample_dataset(config.scenario.model_copy(update={"seed": seed}))
    labels = config.estimator_labels()
    try:
        plan = make_plan(
            data.n,
            config.k_folds,
            plan_seed(config.base_seed, replication),
            config.leftover_policy,
        )
    except SeqDRError as e:
        failure = f"{type(e).__name__}: {e}"
        return [
            ReplicationRecord(replication=replication, estimator=label, seed=seed, failure=failure)
            for label in labels
        ]

    records = []
    for label, choice in zip(labels, config.estimators):
        try:
            if config.contrast is not None:
                report = estimate_dte(data, config.path, config.contrast, choice, plan, config.level)
            else:
                report = estimate(data, config.path, choice, plan, config.level)
        except _REPLICATION_ERRORS as e:
            logger.warning(
                "replication_failed",
                replication=replication,
                estimator=label,
                error=type(e).__name__,
            )
            records.append(
                ReplicationRecord(
                    replication=replication,
                    estimator=label,
                    seed=seed,
                    failure=f"{type(e).__name__}: {e}",
                )
            )
            continue
        oracle = target.oracles.get(choice.nuisance_family.value)
        records.append(
            ReplicationRecord(
                replication=replication,
                estimator=label,
                seed=seed,
                theta_hat=report.theta_hat,
                sigma_hat=report.sigma_hat,
                ci_low=report.ci_low,
                ci_high=report.ci_high,
                covered=report.covers(target.theta, 2.0 * target.mc_se),
                nuisance_errors=nuisance_errors(report, oracle) if oracle is not None else {},
                nonconverged_stages=len(report.diagnostics.nonconverged_stages),
            )
        )
    return records


def run_study(config: StudyConfig, parallelism: int | None = None) -> StudyResult:
    """
    Run all replications and aggregate per-estimator metrics.

    Args:
        config: Study configuration
        parallelism: Worker processes; defaults to the config, then to
            ``SEQDR_STUDY_PARALLELISM``

    Returns:
        StudyResult: Summaries and per-replication records, identical for any
        parallelism level

    Raises:
        StudyFailureError: If the failed share of estimator runs exceeds the
            configured threshold
    """
    settings = get_settings().study
    workers = parallelism or config.parallelism or settings.parallelism
    oracle_population = (
        config.oracle_population
        if config.oracle_population is not None
        else settings.oracle_population
    )
    target = resolve_target(config, oracle_population)
    task = partial(run_replication, config, target)
    replications = range(config.replications)

    logger.info(
        "study_started",
        replications=config.replications,
        estimators=len(config.estimators),
        workers=workers,
        target=target.label,
    )
    if workers <= 1:
        batches = [task(r) for r in replications]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(task, replications))
    records = [record for batch in batches for record in batch]

    total = len(records)
    failed = sum(1 for record in records if record.failed)
    if total and failed / total > settings.failure_threshold:
        raise StudyFailureError(
            f"{failed} of {total} estimator runs failed",
            {
                "failed": failed,
                "total": total,
                "threshold": settings.failure_threshold,
                "first_failure": next(record.failure for record in records if record.failed),
            },
        )

    summaries = [
        summarize_estimator(
            [record for record in records if record.estimator == label],
            label,
            choice.nuisance_family.value,
            target.theta,
            config.scenario.n,
        )
        for label, choice in zip(config.estimator_labels(), config.estimators)
    ]
    for summary in summaries:
        logger.info(
            "study_summary",
            estimator=summary.estimator,
            bias=summary.bias,
            rmse=summary.rmse,
            coverage=summary.coverage,
            failures=summary.failures,
        )
    return StudyResult(
        scenario=config.scenario,
        target=target.label,
        theta_true=target.theta,
        mc_se=target.mc_se,
        level=config.level,
        replications=config.replications,
        summaries=summaries,
        records=records,
    )
