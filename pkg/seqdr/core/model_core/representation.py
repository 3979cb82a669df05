"""
Monte Carlo check of the doubly robust representation.

Given a data-generating mechanism and four working functions (pi*, rho*,
nu*, mu*), estimates E[psi] - theta_{1,1}. The mean is zero whenever, at each
time point, the propensity or the outcome working function is correct.

Dependencies: numpy
System role: Test oracle for the identification argument
"""

from collections.abc import Callable
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from seqdr.core.model_core.types import Dataset

Function = Callable[[np.ndarray], np.ndarray]


class RepresentationSampler(Protocol):
    """Anything that can draw (1,1)-coded data with a known target mean."""

    @property
    def theta_true(self) -> float: ...

    @property
    def theta_mc_se(self) -> float: ...

    def sample(self, n: int, rng: np.random.Generator) -> Dataset: ...


@dataclass(frozen=True)
class WorkingModels:
    """Working functions: pi*(S1), rho*(S2bar), nu*(S2bar), mu*(S1)."""

    propensity_time1: Function
    propensity_time2: Function
    outcome_time2: Function
    outcome_time1: Function


@dataclass(frozen=True)
class RepresentationCheck:
    """Estimated E[psi] - theta together with its Monte Carlo standard error."""

    bias: float
    mc_se: float


def dr_representation_check(
    sampler: RepresentationSampler,
    working: WorkingModels,
    n_mc: int,
    seed: int = 0,
) -> RepresentationCheck:
    """
    Estimate E[psi(W; working)] - theta_{1,1} by simulation.

    Args:
        sampler: True mechanism producing datasets and the target mean
        working: Working functions plugged into the score
        n_mc: Number of simulated observations
        seed: Seed for the simulation stream

    Returns:
        RepresentationCheck: Bias estimate and standard error, the latter
        including the sampler's own uncertainty about theta
    """
    data = sampler.sample(n_mc, np.random.default_rng(seed))
    s1, s_bar = data.s1, data.s_bar
    pi = working.propensity_time1(s1)
    rho = working.propensity_time2(s_bar)
    nu = working.outcome_time2(s_bar)
    mu = working.outcome_time1(s1)
    psi = mu + data.a1 * (nu - mu) / pi + data.a1 * data.a2 * (data.y - nu) / (pi * rho)

    bias = float(np.mean(psi) - sampler.theta_true)
    variance = float(np.var(psi)) / n_mc + sampler.theta_mc_se**2
    return RepresentationCheck(bias=bias, mc_se=float(np.sqrt(variance)))
