"""Shared fixtures: small sampling budgets and a seeded numpy generator."""

import numpy as np
import pytest

from src.config import CorpusConfig, SampleConfig
from src.polycore import MultiPoly


@pytest.fixture
def cfg() -> SampleConfig:
    return SampleConfig(trials=48, seed=7)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def z2():
    """Variables z1, z2 of the two-variable ring."""
    return MultiPoly.variables(2)


@pytest.fixture
def corpus_config(tmp_path) -> CorpusConfig:
    return CorpusConfig(
        num_samples=10,
        random_seed=3,
        output_dir=tmp_path / "corpus",
        matrix_order=(2, 3),
        nvars=(1, 2),
        curve_resolution=12,
    )
