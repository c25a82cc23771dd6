"""DML cost functions and the correlation compressions that feed them.

Three costs share one structure, sum_p tr{P_perp(rho_p, gamma) R_p}:

- exact:      one term per integer index r with R_r = x_r x_r^H
- chebyshev:  R_p = sum_r Phi_p(r) x_r x_r^H at the Chebyshev abscissas rho_p
- bin:        R_{b,p} = sum_{r in bin p} x_r x_r^H at the bin centers

P_perp is never formed from a pseudo-inverse; every term goes through the
thin QR factor of the steering matrix.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..config.settings import ArrayConfig
from ..domain.entities import CorrSet, SnapshotSet
from ..domain.enums import CorrKind
from ..numerics import adjoint, cheb_nodes, cheb_weight_matrix, thin_qr_stack
from .array_model import as_gamma, steering_matrix

logger = logging.getLogger(__name__)

# Relative bound on the imaginary residue of a trace and on the anti-Hermitian part of R_p
IMAG_RESIDUE_TOL = 1e-10


class NumericalConsistencyError(ArithmeticError):
    """Raised when a quantity that must be real (or Hermitian) is not, beyond round-off."""


def _weighted_outer(data: np.ndarray, weights: np.ndarray) -> np.ndarray:
    # data (M, n), weights (n, P) -> (P, M, M) = sum_r w_rp x_r x_r^H
    return np.einsum("rp,mr,kr->pmk", weights, data, data.conj(), optimize=True)


def _check_hermitian(matrices: np.ndarray, what: str) -> np.ndarray:
    skew = np.linalg.norm(matrices - adjoint(matrices))
    scale = np.linalg.norm(matrices)
    if skew > IMAG_RESIDUE_TOL * max(scale, np.finfo(float).tiny):
        raise NumericalConsistencyError(f"{what} matrices are not Hermitian (||R - R^H|| = {skew:.3e}, ||R|| = {scale:.3e})")
    return 0.5 * (matrices + adjoint(matrices))


# Compression


def compress_cheb(snapshots: SnapshotSet, order: int) -> CorrSet:
    """Compress snapshots into the P Chebyshev correlation matrices R_p.

    Raises:
        ValueError: If order < 1.
    """
    if order < 1:
        raise ValueError(f"Chebyshev order must be >= 1, got {order}")
    cfg = snapshots.cfg
    interval = cfg.index_interval
    weights = cheb_weight_matrix(order, interval, cfg.indices)
    matrices = _check_hermitian(_weighted_outer(snapshots.data, weights), "Chebyshev correlation")
    return CorrSet(CorrKind.CHEBYSHEV, cheb_nodes(order, interval), matrices, cfg)


@dataclass(frozen=True)
class BinLayout:
    """Partition of the index range into equal-width bins.

    With ``centered_on_indices`` False the bins split [r1, r2] as
    [r1 + (p-1) d, r1 + p d) and r2 joins the last bin. With it True they split
    [r1 - 1/2, r2 + 1/2], so P_b = r2 - r1 + 1 puts one index at each center.
    """

    start: float
    width: float
    n_bins: int

    @classmethod
    def for_config(cls, cfg: ArrayConfig, n_bins: int, centered_on_indices: bool = False) -> "BinLayout":
        """Build the layout of ``n_bins`` bins over the index range of ``cfg``.

        Raises:
            ValueError: If n_bins < 1.
        """
        if n_bins < 1:
            raise ValueError(f"Number of bins must be >= 1, got {n_bins}")
        if centered_on_indices:
            return cls(cfg.r1 - 0.5, cfg.n_indices / n_bins, n_bins)
        return cls(float(cfg.r1), (cfg.r2 - cfg.r1) / n_bins, n_bins)

    @property
    def centers(self) -> np.ndarray:
        """Return the bin centers rho_{b,p}."""
        return self.start + (np.arange(1, self.n_bins + 1) - 0.5) * self.width

    def assign(self, r) -> np.ndarray:
        """Return the 0-based bin index of each (real) r, clipped into range."""
        idx = np.floor((np.asarray(r, dtype=float) - self.start) / self.width).astype(int)
        return np.clip(idx, 0, self.n_bins - 1)


def compress_bin(snapshots: SnapshotSet, n_bins: int, centered_on_indices: bool = False) -> CorrSet:
    """Compress snapshots into the P_b bin covariance matrices R_{b,p}.

    Raises:
        ValueError: If n_bins < 1.
    """
    cfg = snapshots.cfg
    layout = BinLayout.for_config(cfg, n_bins, centered_on_indices)
    membership = np.zeros((cfg.n_indices, n_bins))
    membership[np.arange(cfg.n_indices), layout.assign(cfg.indices)] = 1.0
    matrices = _check_hermitian(_weighted_outer(snapshots.data, membership), "bin covariance")
    return CorrSet(CorrKind.BIN, layout.centers, matrices, cfg)


def corr_eigenvalues(corr: CorrSet) -> np.ndarray:
    """Return the eigenvalues of every R_p, shape (P, M), each row descending."""
    return np.linalg.eigvalsh(corr.matrices)[:, ::-1]


# Cost evaluation


def _real_sum(terms: np.ndarray, scale: float) -> float:
    total = np.sum(terms)
    if abs(total.imag) > IMAG_RESIDUE_TOL * max(scale, np.finfo(float).tiny):
        raise NumericalConsistencyError(f"Cost has imaginary residue {total.imag:.3e} (scale {scale:.3e})")
    return float(total.real)


def projected_traces(corr: CorrSet, gamma) -> np.ndarray:
    """Return the per-p terms tr{P_perp(rho_p, gamma) R_p} (complex, before the real-part check).

    Evaluated as tr{P_perp R_p P_perp} so that data inside the steering span
    cancels to round-off squared.

    Raises:
        SingularMatrixError: If a steering matrix is rank deficient.
    """
    gamma = as_gamma(gamma)
    if gamma.size == 0:
        return np.einsum("pii->p", corr.matrices)
    q1 = thin_qr_stack(steering_matrix(corr.cfg, corr.abscissas, gamma))
    q1h = adjoint(q1)
    left = corr.matrices - q1 @ (q1h @ corr.matrices)
    both = left - (left @ q1) @ q1h
    return np.einsum("pii->p", both)


def corr_cost(corr: CorrSet, gamma) -> float:
    """Evaluate sum_p tr{P_perp(rho_p, gamma) R_p} for either compression kind.

    Raises:
        SingularMatrixError: On coincident gamma entries.
        NumericalConsistencyError: If the imaginary residue exceeds its bound.
    """
    scale = float(np.sum(np.linalg.norm(corr.matrices, axis=(1, 2))))
    return _real_sum(projected_traces(corr, gamma), scale)


def cost_cheb(corr: CorrSet, gamma) -> float:
    """Chebyshev-compressed DML cost L_1c(gamma).

    Raises:
        ValueError: If ``corr`` is not a Chebyshev compression.
    """
    if corr.kind is not CorrKind.CHEBYSHEV:
        raise ValueError(f"cost_cheb needs a Chebyshev CorrSet, got {corr.kind.value}")
    return corr_cost(corr, gamma)


def cost_bin(corr: CorrSet, gamma) -> float:
    """Bin-compressed DML cost L_1b(gamma).

    Raises:
        ValueError: If ``corr`` is not a bin compression.
    """
    if corr.kind is not CorrKind.BIN:
        raise ValueError(f"cost_bin needs a bin CorrSet, got {corr.kind.value}")
    return corr_cost(corr, gamma)


def cost_exact(snapshots: SnapshotSet, gamma) -> float:
    """Exact DML cost L_1(gamma) = sum_r ||P_perp(r, gamma) x_r||^2.

    Reference oracle for the compressed costs; O(n M K^2) per call.

    Raises:
        SingularMatrixError: On coincident gamma entries.
    """
    gamma = as_gamma(gamma)
    data = snapshots.data
    if gamma.size == 0:
        return snapshots.energy
    cfg = snapshots.cfg
    q1 = thin_qr_stack(steering_matrix(cfg, cfg.indices.astype(float), gamma))
    x = data.T[:, :, None]
    residual = x - q1 @ (adjoint(q1) @ x)
    return float(np.sum(np.abs(residual) ** 2))


# Projector interpolation error


@dataclass(frozen=True, eq=False)
class InterpErrorCurve:
    """Max elementwise projector interpolation error at each evaluated index."""

    r: np.ndarray
    errors: np.ndarray
    method: CorrKind
    order: int

    @property
    def max_error(self) -> float:
        """Return the maximum error over the curve."""
        return float(np.max(self.errors))

    @property
    def errors_db(self) -> np.ndarray:
        """Return 20 log10 of the errors (-inf where exact)."""
        with np.errstate(divide="ignore"):
            return 20.0 * np.log10(self.errors)

    @property
    def max_error_db(self) -> float:
        """Return the maximum error in dB."""
        with np.errstate(divide="ignore"):
            return float(20.0 * np.log10(self.max_error))


def _projector_stack(cfg: ArrayConfig, rs: np.ndarray, gamma: np.ndarray) -> np.ndarray:
    q1 = thin_qr_stack(steering_matrix(cfg, rs, gamma))
    return np.eye(cfg.n_sensors, dtype=complex) - q1 @ adjoint(q1)


def projector_interp_error(
    cfg: ArrayConfig,
    gamma,
    method: CorrKind,
    order: int,
    rs=None,
    centered_on_indices: bool = False,
) -> InterpErrorCurve:
    """Compare P_perp(r, gamma) with its Chebyshev or bin interpolant at real indices ``rs``.

    Args:
        cfg: Array configuration.
        gamma: Direction vector.
        method: Chebyshev (cardinal-weight sum over P nodes) or bin (value at the bin center).
        order: P or P_b.
        rs: Real indices to evaluate at; defaults to every integer in [r1, r2].
        centered_on_indices: Bin convention, see ``BinLayout``.

    Raises:
        ValueError: If order < 1.
    """
    if order < 1:
        raise ValueError(f"Interpolation order must be >= 1, got {order}")
    gamma = as_gamma(gamma)
    rs = cfg.indices.astype(float) if rs is None else np.atleast_1d(np.asarray(rs, dtype=float))
    exact = _projector_stack(cfg, rs, gamma)

    if method is CorrKind.CHEBYSHEV:
        interval = cfg.index_interval
        at_nodes = _projector_stack(cfg, cheb_nodes(order, interval), gamma)
        weights = cheb_weight_matrix(order, interval, rs)
        approx = np.einsum("rp,pij->rij", weights, at_nodes)
    else:
        layout = BinLayout.for_config(cfg, order, centered_on_indices)
        at_centers = _projector_stack(cfg, layout.centers, gamma)
        approx = at_centers[layout.assign(rs)]

    errors = np.max(np.abs(exact - approx), axis=(1, 2))
    return InterpErrorCurve(rs, errors, method, order)


def interp_error_sweep(
    cfg: ArrayConfig, gamma, method: CorrKind, order: int, centered_on_indices: bool = False
) -> InterpErrorCurve:
    """Projector interpolation error at every integer index in [r1, r2]."""
    curve = projector_interp_error(cfg, gamma, method, order, None, centered_on_indices)
    logger.debug(f"{method.value} order {order}: max interpolation error {curve.max_error_db:.1f} dB")
    return curve
