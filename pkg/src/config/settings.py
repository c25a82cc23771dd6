"""Immutable configuration settings for the wideband DOA toolkit.

Configuration is loaded once and passed to the estimation and experiment
code explicitly. Every default reproduces the reference numerical setup:
a 10-sensor half-wavelength ULA at 2.4 GHz, N = 2048, BT = 0.8, indices
[-819, 818], three waves at gamma = (-0.71, -0.63, 0.27).
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np

from ..domain.enums import EstimatorKind, ScenarioKind
from ..domain.patterns import SensorPattern, pattern_from_name
from ..numerics import Interval

if TYPE_CHECKING:
    from ..domain.entities import SnapshotSet

SPEED_OF_LIGHT = 299_792_458.0


@dataclass(frozen=True)
class ArrayConfig:
    """Sensor geometry, carrier and sampling of the array.

    Sensors sit on a line with the first one at the reference point. When
    ``positions`` is None they are spaced ``spacing`` meters apart, where a
    None spacing means half a wavelength at the carrier.
    """

    n_sensors: int = 10
    carrier_hz: float = 2.4e9
    propagation_speed: float = SPEED_OF_LIGHT
    spacing: float | None = None
    positions: tuple[float, ...] | None = None
    pattern: str = "isotropic"
    n_fft: int = 2048
    bandwidth_hz: float = 0.25 * 2.4e9
    bt_product: float = 0.8
    r1: int = -819
    r2: int = 818

    def __post_init__(self) -> None:
        """Validate geometry and sampling invariants."""
        if self.positions is not None:
            object.__setattr__(self, "positions", tuple(float(d) for d in self.positions))
            if len(self.positions) != self.n_sensors:
                raise ValueError(f"positions has {len(self.positions)} entries but n_sensors is {self.n_sensors}")
        if self.n_sensors < 2:
            raise ValueError(f"n_sensors must be >= 2, got {self.n_sensors}")
        if self.carrier_hz <= 0:
            raise ValueError(f"carrier_hz must be positive, got {self.carrier_hz}")
        if self.propagation_speed <= 0:
            raise ValueError(f"propagation_speed must be positive, got {self.propagation_speed}")
        if self.spacing is not None and self.spacing <= 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        if self.n_fft < 1:
            raise ValueError(f"n_fft must be >= 1, got {self.n_fft}")
        if self.bandwidth_hz <= 0:
            raise ValueError(f"bandwidth_hz must be positive, got {self.bandwidth_hz}")
        if self.bt_product <= 0:
            raise ValueError(f"bt_product must be positive, got {self.bt_product}")
        if not self.r1 < self.r2:
            raise ValueError(f"r1 must be < r2, got r1={self.r1}, r2={self.r2}")
        pattern_from_name(self.pattern)

    @classmethod
    def uniform_linear(cls, n_sensors: int = 10, spacing: float | None = None, **kwargs) -> "ArrayConfig":
        """Create a uniform linear array, half-wavelength spaced by default."""
        return cls(n_sensors=n_sensors, spacing=spacing, **kwargs)

    @property
    def sensor_positions(self) -> np.ndarray:
        """Return the sensor positions d_m in meters."""
        if self.positions is not None:
            return np.asarray(self.positions, dtype=float)
        step = self.spacing if self.spacing is not None else self.propagation_speed / (2.0 * self.carrier_hz)
        return step * np.arange(self.n_sensors, dtype=float)

    @property
    def delays(self) -> np.ndarray:
        """Return tau_m = d_m / c."""
        return self.sensor_positions / self.propagation_speed

    @property
    def period(self) -> float:
        """Return the sampling period T = BT / B."""
        return self.bt_product / self.bandwidth_hz

    @property
    def sensor_pattern(self) -> SensorPattern:
        """Return the pattern object named by ``pattern``."""
        return pattern_from_name(self.pattern)

    @property
    def n_indices(self) -> int:
        """Return r2 - r1 + 1."""
        return self.r2 - self.r1 + 1

    @property
    def indices(self) -> np.ndarray:
        """Return the integer frequency indices r1..r2."""
        return np.arange(self.r1, self.r2 + 1)

    @property
    def index_interval(self) -> Interval:
        """Return [r1, r2] as an Interval."""
        return Interval(float(self.r1), float(self.r2))

    def frequency(self, r):
        """Return the absolute frequency f_o + r / (N T) of index r (real r allowed)."""
        return self.carrier_hz + np.asarray(r, dtype=float) / (self.n_fft * self.period)

    def baseband_frequency(self, r):
        """Return r / (N T)."""
        return np.asarray(r, dtype=float) / (self.n_fft * self.period)


@dataclass(frozen=True)
class ScenarioConfig:
    """Impinging waves of a simulation run.

    Delays are given in units of 1 / (2 f_o), i.e. tau'_k = delays_k / (2 f_o).
    A ``symbol_rate_hz`` of None means one symbol per 1 / B. A ``snr_db`` of
    None or +inf disables noise. ``noise_var`` is used only when there is no
    signal power to calibrate against (K = 0 or all-zero amplitudes).
    """

    kind: ScenarioKind = ScenarioKind.INDEPENDENT
    amplitudes: tuple[complex, ...] = (0.626 + 0.7798j, -0.4432 - 0.552j, 0.3138 + 0.3908j)
    delays: tuple[float, ...] = (0.0, 0.6, 37.53)
    gamma_true: tuple[float, ...] = (-0.71, -0.63, 0.27)
    rolloff: float = 0.2
    symbol_rate_hz: float | None = None
    snr_db: float | None = 20.0
    noise_var: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        """Normalize tuples and validate lengths and ranges."""
        object.__setattr__(self, "amplitudes", tuple(complex(a) for a in self.amplitudes))
        object.__setattr__(self, "delays", tuple(float(v) for v in self.delays))
        object.__setattr__(self, "gamma_true", tuple(float(g) for g in self.gamma_true))
        if not len(self.amplitudes) == len(self.delays) == len(self.gamma_true):
            raise ValueError(
                "amplitudes, delays and gamma_true must have equal lengths, got "
                f"{len(self.amplitudes)}, {len(self.delays)}, {len(self.gamma_true)}"
            )
        if any(abs(g) > 1.0 for g in self.gamma_true):
            raise ValueError(f"gamma_true entries must lie in [-1, 1], got {self.gamma_true}")
        if not 0.0 <= self.rolloff <= 1.0:
            raise ValueError(f"rolloff must lie in [0, 1], got {self.rolloff}")
        if self.symbol_rate_hz is not None and self.symbol_rate_hz <= 0:
            raise ValueError(f"symbol_rate_hz must be positive, got {self.symbol_rate_hz}")
        if self.noise_var <= 0:
            raise ValueError(f"noise_var must be positive, got {self.noise_var}")

    @property
    def n_signals(self) -> int:
        """Return K."""
        return len(self.gamma_true)

    @property
    def noiseless(self) -> bool:
        """Whether noise generation is disabled."""
        return self.snr_db is None or np.isposinf(self.snr_db)


@dataclass(frozen=True)
class SearchConfig:
    """One-dimensional gamma search: interpolation order, oversampling and Newton refinement."""

    q_order: int = 50
    oversample_factor: int = 2
    gamma_min: float = -1.0
    gamma_max: float = 1.0
    newton_tol: float = 1e-12
    newton_max_iter: int = 30

    def __post_init__(self) -> None:
        """Validate search invariants."""
        if self.q_order < 2:
            raise ValueError(f"q_order must be >= 2, got {self.q_order}")
        if self.oversample_factor < 2:
            raise ValueError(f"oversample_factor must be >= 2, got {self.oversample_factor}")
        if not -1.0 <= self.gamma_min < self.gamma_max <= 1.0:
            raise ValueError(f"gamma search interval must satisfy -1 <= min < max <= 1, got [{self.gamma_min}, {self.gamma_max}]")
        if self.newton_tol <= 0:
            raise ValueError(f"newton_tol must be positive, got {self.newton_tol}")
        if self.newton_max_iter < 1:
            raise ValueError(f"newton_max_iter must be >= 1, got {self.newton_max_iter}")

    @property
    def gamma_interval(self) -> Interval:
        """Return the search interval."""
        return Interval(self.gamma_min, self.gamma_max)

    @property
    def oversampled_order(self) -> int:
        """Return R = oversample_factor * Q."""
        return self.oversample_factor * self.q_order


@dataclass(frozen=True)
class DetectorConfig:
    """GLR detection test settings.

    ``clamp_snr_db`` floors the test noise variance at signal_power / 10^(clamp/10)
    when resolved against a snapshot set; None disables the floor.
    """

    p_fa: float = 0.01
    noise_var: float = 1.0
    clamp_snr_db: float | None = 37.0

    def __post_init__(self) -> None:
        """Validate the false-alarm probability and noise variance."""
        if not 0.0 < self.p_fa < 1.0:
            raise ValueError(f"p_fa must lie in (0, 1), got {self.p_fa}")
        if not self.noise_var > 0:
            raise ValueError(f"noise_var must be positive, got {self.noise_var}")

    @classmethod
    def for_snapshots(
        cls, snapshots: "SnapshotSet", p_fa: float = 0.01, clamp_snr_db: float | None = 37.0
    ) -> "DetectorConfig":
        """Build the detector for a snapshot set using its true noise variance.

        Raises:
            ValueError: If the resulting variance is not positive (noiseless data without a clamp).
        """
        noise_var = snapshots.noise_var
        if clamp_snr_db is not None and snapshots.signal_power > 0:
            noise_var = max(noise_var, snapshots.signal_power / 10.0 ** (clamp_snr_db / 10.0))
        if noise_var <= 0:
            raise ValueError("Detector noise variance must be positive; enable the SNR clamp for noiseless data")
        return cls(p_fa=p_fa, noise_var=noise_var, clamp_snr_db=clamp_snr_db)

    def resolve(self, snapshots: "SnapshotSet") -> "DetectorConfig":
        """Return a copy whose noise variance comes from ``snapshots``."""
        return self.for_snapshots(snapshots, self.p_fa, self.clamp_snr_db)


@dataclass(frozen=True)
class MvpOptions:
    """Stopping rules of the MVP Gauss-Newton refinement.

    Iteration stops when the accepted cost decrease falls below
    ``rtol * old_cost + atol * energy`` or the step shrinks below ``min_step``.
    """

    rtol: float = 1e-10
    atol: float = 1e-15
    max_iter: int = 50
    max_halvings: int = 40
    min_step: float = 1e-13
    reg_scale: float = 1e-8

    def __post_init__(self) -> None:
        """Validate tolerances and iteration counts."""
        if self.rtol < 0 or self.atol < 0:
            raise ValueError(f"rtol and atol must be non-negative, got {self.rtol}, {self.atol}")
        if self.max_iter < 0:
            raise ValueError(f"max_iter must be >= 0, got {self.max_iter}")
        if self.max_halvings < 1:
            raise ValueError(f"max_halvings must be >= 1, got {self.max_halvings}")
        if self.reg_scale <= 0:
            raise ValueError(f"reg_scale must be positive, got {self.reg_scale}")


@dataclass(frozen=True)
class EstimatorSpec:
    """An estimator and its compression order (P for Chebyshev, P_b for bins)."""

    kind: EstimatorKind
    order: int

    def __post_init__(self) -> None:
        """Validate the order."""
        if self.order < 1:
            raise ValueError(f"estimator order must be >= 1, got {self.order}")

    @classmethod
    def parse(cls, text: str) -> "EstimatorSpec":
        """Parse ``kind:order``, e.g. ``cheb_ml:6``."""
        name, sep, order = str(text).strip().partition(":")
        if not sep:
            raise ValueError(f"Estimator must be written as kind:order, got {text!r}")
        try:
            return cls(EstimatorKind.from_value(name), int(order))
        except ValueError as e:
            raise ValueError(f"Invalid estimator {text!r}: {e}") from e

    @property
    def label(self) -> str:
        """Return the canonical ``kind:order`` text."""
        return f"{self.kind.value}:{self.order}"


def _default_estimators() -> tuple[EstimatorSpec, ...]:
    return (
        EstimatorSpec(EstimatorKind.IC_MUSIC, 47),
        EstimatorSpec(EstimatorKind.BIN_ML, 47),
        EstimatorSpec(EstimatorKind.CHEB_ML, 6),
    )


@dataclass(frozen=True)
class ExperimentConfig:
    """Main configuration container for experiment runs.

    This is the single source of truth for configuration. Create once
    (defaults or ``load_config``) and pass to the experiment drivers.
    """

    array: ArrayConfig = field(default_factory=ArrayConfig)
    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)
    search: SearchConfig = field(default_factory=SearchConfig)
    detector: DetectorConfig = field(default_factory=DetectorConfig)
    mvp: MvpOptions = field(default_factory=MvpOptions)
    estimators: tuple[EstimatorSpec, ...] = field(default_factory=_default_estimators)
    snr_grid_db: tuple[float, ...] = (-10.0, 0.0, 10.0, 20.0, 30.0, 40.0)
    trials: int = 100
    seed: int = 0
    workers: int = 1
    output_dir: Path = Path("results")

    def __post_init__(self) -> None:
        """Validate harness invariants."""
        object.__setattr__(self, "estimators", tuple(self.estimators))
        object.__setattr__(self, "snr_grid_db", tuple(float(s) for s in self.snr_grid_db))
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not self.snr_grid_db:
            raise ValueError("snr_grid_db must not be empty")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")
        if self.scenario.n_signals >= self.array.n_sensors:
            raise ValueError(
                f"scenario has {self.scenario.n_signals} signals but the array has only {self.array.n_sensors} sensors"
            )

    @classmethod
    def with_defaults(cls) -> "ExperimentConfig":
        """Create settings with all reference defaults."""
        return cls()
