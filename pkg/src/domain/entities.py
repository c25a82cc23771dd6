"""Domain entities for wideband DOA estimation.

Pure data containers with light validation. All computation is handled by
the estimation/, simulation/ and experiments/ modules.
"""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import numpy as np

from ..numerics import ChebGrid, ChebSeries, cheb_fit
from .enums import CorrKind, StepKind

if TYPE_CHECKING:
    from ..config.settings import ArrayConfig


def _frozen(a: np.ndarray, dtype=None) -> np.ndarray:
    out = np.array(a, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class SnapshotSet:
    """Frequency-domain array data x_r for r in [r1, r2].

    Column r - r1 of ``data`` holds x_r. ``noise_var`` is the per-element noise
    variance used to generate the set (0 for noiseless data) and ``signal_power``
    the average signal power per (m, r).
    """

    data: np.ndarray
    cfg: "ArrayConfig"
    noise_var: float = 0.0
    signal_power: float = 0.0
    gamma_true: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        """Validate the data shape against the array configuration."""
        data = _frozen(self.data, complex)
        expected = (self.cfg.n_sensors, self.cfg.n_indices)
        if data.shape != expected:
            raise ValueError(f"SnapshotSet data must have shape {expected}, got {data.shape}")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "gamma_true", tuple(float(g) for g in self.gamma_true))

    @property
    def n_sensors(self) -> int:
        """Return M."""
        return self.data.shape[0]

    @property
    def n_indices(self) -> int:
        """Return r2 - r1 + 1."""
        return self.data.shape[1]

    @property
    def energy(self) -> float:
        """Return sum_r ||x_r||^2."""
        return float(np.sum(np.abs(self.data) ** 2))

    def column(self, r: int) -> np.ndarray:
        """Return x_r for an integer index r in [r1, r2]."""
        if not self.cfg.r1 <= r <= self.cfg.r2:
            raise ValueError(f"Index {r} outside [{self.cfg.r1}, {self.cfg.r2}]")
        return self.data[:, r - self.cfg.r1]


@dataclass(frozen=True, eq=False)
class CorrSet:
    """Correlation matrices that compress a snapshot set.

    For ``CorrKind.CHEBYSHEV`` these are R_p at the Chebyshev abscissas rho_p;
    for ``CorrKind.BIN`` the bin covariances R_{b,p} at the bin centers.
    """

    kind: CorrKind
    abscissas: np.ndarray
    matrices: np.ndarray
    cfg: "ArrayConfig"

    def __post_init__(self) -> None:
        """Freeze arrays and check that there is one matrix per abscissa."""
        abscissas = _frozen(self.abscissas, float)
        matrices = _frozen(self.matrices, complex)
        if matrices.ndim != 3 or matrices.shape[1] != matrices.shape[2]:
            raise ValueError(f"CorrSet matrices must be a stack of square matrices, got shape {matrices.shape}")
        if abscissas.shape != (matrices.shape[0],):
            raise ValueError(f"CorrSet has {matrices.shape[0]} matrices but {abscissas.size} abscissas")
        object.__setattr__(self, "abscissas", abscissas)
        object.__setattr__(self, "matrices", matrices)

    @property
    def order(self) -> int:
        """Return P (or P_b)."""
        return self.matrices.shape[0]

    @property
    def n_sensors(self) -> int:
        """Return M."""
        return self.matrices.shape[1]

    @property
    def total_trace(self) -> float:
        """Return sum_p tr{R_p}."""
        return float(np.real(np.einsum("pii->", self.matrices)))


@dataclass(frozen=True, eq=False)
class PseudoSpectrum:
    """Samples of a gamma-dependent search function at the Q Chebyshev nodes of the search interval."""

    grid: ChebGrid
    series: ChebSeries = field(init=False)

    def __post_init__(self) -> None:
        """Fit the interpolating series."""
        object.__setattr__(self, "series", cheb_fit(self.grid))

    @property
    def nodes(self) -> np.ndarray:
        """Return the gamma nodes."""
        return self.grid.nodes

    @property
    def values(self) -> np.ndarray:
        """Return the node samples."""
        return self.grid.values

    def __call__(self, gamma):
        """Evaluate the interpolated pseudo-spectrum (real part)."""
        return np.real(self.series(gamma))


@dataclass
class MvpState:
    """State of an MVP refinement after its last accepted iteration."""

    gamma: np.ndarray
    alpha: int
    cost: float
    mu: float = 1.0
    regularized: bool = False
    converged: bool = True
    costs: list[float] = field(default_factory=list)

    @property
    def k(self) -> int:
        """Return the number of components K."""
        return int(np.size(self.gamma))


@dataclass(frozen=True)
class TraceEntry:
    """One step of the detection-estimation loop."""

    step: StepKind
    k: int
    alpha: int
    cost: float
    threshold: float | None = None
    exceeded: bool | None = None

    def to_dict(self) -> dict[str, Any]:
        """Convert to a JSON-friendly dictionary."""
        return {
            "step": self.step.value,
            "k": int(self.k),
            "alpha": int(self.alpha),
            "cost": float(self.cost),
            "threshold": None if self.threshold is None else float(self.threshold),
            "exceeded": None if self.exceeded is None else bool(self.exceeded),
        }


@dataclass(frozen=True)
class Decision:
    """Outcome of a detection step: stop, or add the component ``gamma_new``."""

    stop: bool
    cost: float
    threshold: float
    gamma_new: float | None = None
    reason: str = ""


@dataclass
class EstimationResult:
    """Estimated direction parameters with the trace that produced them."""

    gamma_hat: np.ndarray
    trace: list[TraceEntry] = field(default_factory=list)
    converged: bool = True
    estimator: str = ""

    def __post_init__(self) -> None:
        """Store gamma_hat sorted ascending."""
        self.gamma_hat = np.sort(np.asarray(self.gamma_hat, dtype=float).ravel())

    @property
    def k_hat(self) -> int:
        """Return the number of estimated components."""
        return int(self.gamma_hat.size)

    def to_dict(self) -> dict[str, Any]:
        """Convert to a JSON-friendly dictionary."""
        return {
            "estimator": self.estimator,
            "gamma_hat": self.gamma_hat.tolist(),
            "k_hat": self.k_hat,
            "converged": bool(self.converged),
            "trace": [entry.to_dict() for entry in self.trace],
        }
