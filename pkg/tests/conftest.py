"""Shared fixtures: a small fast array, a two-wave scenario and the reference configuration."""

from dataclasses import replace

import numpy as np
import pytest

from src.config import ArrayConfig, ExperimentConfig, ScenarioConfig, SearchConfig
from src.simulation import generate_snapshots

# 4 sensors, 51 frequency indices; same fractional bandwidth as the default array
SMALL_ARRAY = ArrayConfig(n_sensors=4, n_fft=64, r1=-25, r2=25)

TWO_WAVES = ScenarioConfig(amplitudes=(1.0 + 0.0j, 0.8j), delays=(0.0, 5.0), gamma_true=(-0.5, 0.3), snr_db=None)

# Bandwidth under which the default array reproduces the reference interpolation orders
REFERENCE_BANDWIDTH_HZ = 2.0e8


@pytest.fixture
def small_array() -> ArrayConfig:
    """Return the small test array."""
    return SMALL_ARRAY


@pytest.fixture
def two_waves() -> ScenarioConfig:
    """Return a noiseless two-wave scenario."""
    return TWO_WAVES


@pytest.fixture
def search() -> SearchConfig:
    """Return the default search settings."""
    return SearchConfig()


@pytest.fixture
def noiseless_snapshots(small_array, two_waves):
    """Return noiseless two-wave snapshots on the small array."""
    return generate_snapshots(two_waves, small_array, seed=7)


@pytest.fixture
def noisy_snapshots(small_array, two_waves):
    """Return two-wave snapshots at 10 dB SNR on the small array."""
    return generate_snapshots(replace(two_waves, snr_db=10.0), small_array, seed=11)


@pytest.fixture
def default_config() -> ExperimentConfig:
    """Return the reference experiment configuration."""
    return ExperimentConfig.with_defaults()


@pytest.fixture
def reference_config(default_config) -> ExperimentConfig:
    """Return the default configuration with the reference bandwidth."""
    return replace(default_config, array=replace(default_config.array, bandwidth_hz=REFERENCE_BANDWIDTH_HZ))


@pytest.fixture
def rng() -> np.random.Generator:
    """Return a seeded generator for test inputs."""
    return np.random.default_rng(1234)


def random_gamma_pairs(rng: np.random.Generator, count: int, min_separation: float = 0.05, bound: float = 0.9):
    """Draw ``count`` sorted gamma pairs in [-bound, bound] separated by at least ``min_separation``."""
    pairs = []
    while len(pairs) < count:
        pair = np.sort(rng.uniform(-bound, bound, 2))
        if pair[1] - pair[0] >= min_separation:
            pairs.append(pair)
    return pairs
