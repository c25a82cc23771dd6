"""Deterministic array geometry: steering matrices, their derivatives, projectors and signatures.

    [A(r, gamma)]_{m,k} = exp(-j 2 pi (f_o + r / (N T)) tau_m gamma_k) b_m(gamma_k)

``r`` is a real frequency index; Chebyshev abscissas and bin centers are not
integers. Functions that take ``r`` accept a scalar (returning M x K) or a
1-D array (returning a leading axis of len(r)).
"""

import numpy as np

from ..config.settings import ArrayConfig
from ..numerics import thin_qr

# Tolerance on |gamma| > 1 and on pairwise distinctness of gamma entries
GAMMA_TOL = 1e-9


def as_gamma(gamma) -> np.ndarray:
    """Coerce a direction vector to a 1-D float array and range-check it."""
    gamma = np.atleast_1d(np.asarray(gamma, dtype=float)).ravel()
    if gamma.size and np.max(np.abs(gamma)) > 1.0 + GAMMA_TOL:
        raise ValueError(f"Direction parameters must lie in [-1, 1], got {gamma.tolist()}")
    return gamma


def check_distinct(gamma, tol: float = GAMMA_TOL) -> np.ndarray:
    """Return gamma as an array, raising ValueError if two entries are closer than ``tol``."""
    gamma = as_gamma(gamma)
    if gamma.size > 1:
        gaps = np.diff(np.sort(gamma))
        if np.min(gaps) < tol:
            raise ValueError(f"Direction parameters must be pairwise distinct, got {gamma.tolist()}")
    return gamma


def _phase(cfg: ArrayConfig, r, gamma: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    freq = np.asarray(cfg.frequency(r))
    # (..., M, 1) * (K,) -> (..., M, K)
    omega_tau = 2.0 * np.pi * freq[..., None, None] * cfg.delays[:, None]
    return omega_tau, np.exp(-1j * omega_tau * gamma)


def steering_matrix(cfg: ArrayConfig, r, gamma) -> np.ndarray:
    """Return A(r, gamma), shape (M, K) for scalar r or (len(r), M, K) for an array of r."""
    gamma = as_gamma(gamma)
    _, phase = _phase(cfg, r, gamma)
    return phase * cfg.sensor_pattern.gain(gamma, cfg.n_sensors)


def steering_derivative(cfg: ArrayConfig, r, gamma) -> np.ndarray:
    """Return D(r, gamma), the column-wise derivative of A with respect to gamma_k.

    [D]_{m,k} = (-j 2 pi f tau_m b_m(gamma_k) + b'_m(gamma_k)) exp(-j 2 pi f tau_m gamma_k)
    """
    gamma = as_gamma(gamma)
    omega_tau, phase = _phase(cfg, r, gamma)
    pattern = cfg.sensor_pattern
    gain = pattern.gain(gamma, cfg.n_sensors)
    slope = pattern.gain_derivative(gamma, cfg.n_sensors)
    return (-1j * omega_tau * gain + slope) * phase


def projection_orth(a: np.ndarray) -> np.ndarray:
    """Return P_perp = I - A A^+ computed as I - Q1 Q1^H.

    Raises:
        SingularMatrixError: If A is rank deficient.
    """
    a = np.asarray(a)
    q1 = thin_qr(a).q1
    return np.eye(a.shape[0], dtype=complex) - q1 @ q1.conj().T


def normalized_signature(cfg: ArrayConfig, rho: float, gamma: float) -> np.ndarray:
    """Return a(rho, gamma) / ||a(rho, gamma)||.

    Raises:
        ValueError: If the steering column is zero (e.g. a pattern null).
    """
    column = steering_matrix(cfg, float(rho), [float(gamma)])[:, 0]
    norm = np.linalg.norm(column)
    if norm == 0.0:
        raise ValueError(f"Steering column is zero at rho={rho}, gamma={gamma}")
    return column / norm


def signature_table(cfg: ArrayConfig, rhos, gammas) -> np.ndarray:
    """Return normalized signatures for every (rho_p, gamma_q) pair, shape (P, Q, M).

    Raises:
        ValueError: If any steering column is zero.
    """
    rhos = np.atleast_1d(np.asarray(rhos, dtype=float))
    # steering_matrix over all rho: (P, M, Q) -> (P, Q, M)
    columns = np.swapaxes(steering_matrix(cfg, rhos, gammas), 1, 2)
    norms = np.linalg.norm(columns, axis=2, keepdims=True)
    if np.any(norms == 0.0):
        raise ValueError("Steering column is zero for at least one (rho, gamma) pair")
    return columns / norms
