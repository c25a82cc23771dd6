"""Snapshot generator for the wideband array model.

Creates frequency-domain snapshots x_r = A(r, gamma) s_r + w_r on [r1, r2]
for the independent-signals (IS) and correlated-signals (CS) scenarios.
Everything is generated in the frequency domain: the spectrum of each wave is
the raised-cosine response times the transform of its symbol train, scaled by
its amplitude and delayed by a phase ramp; noise is white per (m, r).
"""

import logging

import numpy as np

from ..config.settings import ArrayConfig, ScenarioConfig
from ..domain.entities import SnapshotSet
from ..domain.enums import ScenarioKind
from ..estimation.array_model import steering_matrix
from ..numerics import ComplexNormalStream
from .pulses import raised_cosine_spectrum

logger = logging.getLogger(__name__)


def _streams(seed: int | np.random.SeedSequence) -> tuple[ComplexNormalStream, ComplexNormalStream]:
    """Return independent (symbol, noise) streams for a seed."""
    symbols, noise = ComplexNormalStream(seed).spawn(2)
    return symbols, noise


def symbol_period(scenario: ScenarioConfig, cfg: ArrayConfig) -> float:
    """Return Tsym, one symbol per 1 / B unless the scenario fixes the rate."""
    rate = scenario.symbol_rate_hz if scenario.symbol_rate_hz is not None else cfg.bandwidth_hz
    return 1.0 / rate


def generate_baseband(
    scenario: ScenarioConfig, cfg: ArrayConfig, stream: ComplexNormalStream | None = None
) -> np.ndarray:
    """Return the wave spectra s_k(r / (N T)) for r in [r1, r2], shape (K, r2 - r1 + 1).

    IS draws one unit-variance complex symbol sequence per wave; CS draws a
    single sequence shared by all waves.

    Raises:
        ValueError: If BT >= 1 (sampling below the Nyquist rate).
    """
    if cfg.bt_product >= 1.0:
        raise ValueError(f"Sampling must satisfy BT < 1, got BT = {cfg.bt_product}")
    stream = stream or _streams(scenario.seed)[0]
    k = scenario.n_signals
    freqs = cfg.baseband_frequency(cfg.indices)
    tsym = symbol_period(scenario, cfg)
    n_symbols = int(np.ceil(cfg.n_fft * cfg.period / tsym))

    # Symbols sit at t_n = (n - (n_symbols - 1) / 2) Tsym, centered in the observation window
    times = (np.arange(n_symbols) - (n_symbols - 1) / 2.0) * tsym
    kernel = np.exp(-2j * np.pi * np.outer(freqs, times))
    n_sequences = k if scenario.kind is ScenarioKind.INDEPENDENT else min(k, 1)
    symbols = stream.draw((n_sequences, n_symbols))
    if scenario.kind is ScenarioKind.CORRELATED and k:
        symbols = np.repeat(symbols, k, axis=0)

    shaped = raised_cosine_spectrum(freqs, tsym, scenario.rolloff) * (symbols @ kernel.T)
    amplitudes = np.asarray(scenario.amplitudes, dtype=complex)[:, None]
    delays = np.asarray(scenario.delays, dtype=float)[:, None] / (2.0 * cfg.carrier_hz)
    return amplitudes * shaped * np.exp(-2j * np.pi * freqs[None, :] * delays)


def generate_snapshots(
    scenario: ScenarioConfig, cfg: ArrayConfig, seed: int | np.random.SeedSequence | None = None
) -> SnapshotSet:
    """Generate a snapshot set for a scenario.

    The noise variance is set so that the average signal power per (m, r)
    over the noise variance matches ``scenario.snr_db``. Without signal power
    (K = 0 or zero amplitudes) ``scenario.noise_var`` is used directly.

    Args:
        scenario: Waves, SNR and default seed.
        cfg: Array configuration.
        seed: Overrides ``scenario.seed`` (an int or a SeedSequence from ``mix_seed``).

    Returns:
        SnapshotSet with the generating noise variance and signal power.
    """
    symbol_stream, noise_stream = _streams(scenario.seed if seed is None else seed)
    spectra = generate_baseband(scenario, cfg, symbol_stream)
    steering = steering_matrix(cfg, cfg.indices.astype(float), scenario.gamma_true)
    clean = np.einsum("rmk,kr->mr", steering, spectra)
    signal_power = float(np.mean(np.abs(clean) ** 2))

    if scenario.noiseless:
        noise_var = 0.0
    elif signal_power == 0.0:
        noise_var = scenario.noise_var
    else:
        noise_var = signal_power / 10.0 ** (scenario.snr_db / 10.0)

    data = clean
    if noise_var > 0.0:
        data = clean + np.sqrt(noise_var) * noise_stream.draw(clean.shape)
    logger.debug(
        f"Generated {scenario.kind.value.upper()} snapshots: K={scenario.n_signals}, "
        f"signal power {signal_power:.3e}, noise variance {noise_var:.3e}"
    )
    return SnapshotSet(data, cfg, noise_var, signal_power, scenario.gamma_true)


def measured_snr_db(snapshots: SnapshotSet, clean: SnapshotSet) -> float:
    """Return 10 log10 of mean signal power over mean noise power, with noise = data - clean."""
    noise_power = float(np.mean(np.abs(snapshots.data - clean.data) ** 2))
    signal_power = float(np.mean(np.abs(clean.data) ** 2))
    return 10.0 * np.log10(signal_power / noise_power)
