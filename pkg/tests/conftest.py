"""
Shared test fixtures and configuration for entire test suite.

Provides: Small synthetic datasets, scenarios, settings cache isolation
Dependencies: pytest, numpy
System role: Test infrastructure and fixture management
"""

import numpy as np
import pytest

from seqdr.configs import get_settings
from seqdr.core.model_core.types import Dataset
from seqdr.models.scenario import ScenarioSpec
from tests.helpers import random_dataset


@pytest.fixture(autouse=True)
def fresh_settings():
    """Re-read environment-backed settings around every test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for test inputs."""
    return np.random.default_rng(12345)


@pytest.fixture
def small_dataset(rng) -> Dataset:
    """
    Two-exposure dataset with mixed treatments.

    Returns:
        Dataset: n=200, d1=4, d2=3
    """
    return random_dataset(rng, n=200, d1=4, d2=3)


@pytest.fixture
def small_scenario() -> ScenarioSpec:
    """
    Correctly specified low-dimensional scenario that runs in milliseconds.

    Returns:
        ScenarioSpec: n=400, d1=6, d2=4, sparsity 3
    """
    return ScenarioSpec(
        n=400,
        d1=6,
        d2=4,
        s_gamma=3,
        s_delta=3,
        s_alpha=3,
        s_beta=3,
        seed=7,
    )


@pytest.fixture
def csv_path(tmp_path):
    """Path for a dataset CSV inside the test's temporary directory."""
    return tmp_path / "data.csv"
