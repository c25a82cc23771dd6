"""One-dimensional gamma searches on Chebyshev-interpolated pseudo-spectra.

Each search samples a function of a single direction parameter at the Q
Chebyshev nodes of the search interval (beamformer, extended beamformer with
fixed components, IC-MUSIC), then ``locate_minima`` upsamples the grid by DCT
zero-padding, picks the deepest interior minima and polishes them by Newton
iterations on the interpolating series. No cost evaluations happen past the
Q node samples.
"""

import logging

import numpy as np
import pandas as pd
from scipy import optimize

from ..config.settings import SearchConfig
from ..domain.entities import CorrSet, PseudoSpectrum
from ..domain.enums import CorrKind
from ..numerics import (
    RANK_TOL,
    ChebGrid,
    ChebSeries,
    adjoint,
    cheb_nodes,
    cheb_oversample,
    hermitian_eig,
    thin_qr_stack,
)
from .array_model import as_gamma, signature_table, steering_matrix
from .cost import corr_cost

logger = logging.getLogger(__name__)


class MinimaShortageError(RuntimeError):
    """Raised when a pseudo-spectrum has fewer interior minima than requested."""

    def __init__(self, message: str, found: list[tuple[float, float]]) -> None:
        """Initialize with the (gamma, value) minima that were found."""
        super().__init__(message)
        self.found = found


def _spectrum(values: np.ndarray, search: SearchConfig) -> PseudoSpectrum:
    return PseudoSpectrum(ChebGrid(search.gamma_interval, np.real(values)))


def _quadratic_forms(left: np.ndarray, matrices: np.ndarray, right: np.ndarray) -> np.ndarray:
    # sum_p left_{p,q}^H M_p right_{p,q} for every q
    return np.einsum("pqm,pmn,pqn->q", left.conj(), matrices, right, optimize=True)


def beamformer_grid(corr: CorrSet, search: SearchConfig) -> PseudoSpectrum:
    """Sample the single-component cost at the Q gamma nodes.

    L(gamma_q) = sum_p tr{R_p} - a_{p,q}^H R_p a_{p,q} with normalized signatures a_{p,q}.
    """
    nodes = cheb_nodes(search.q_order, search.gamma_interval)
    signatures = signature_table(corr.cfg, corr.abscissas, nodes)
    values = corr.total_trace - np.real(_quadratic_forms(signatures, corr.matrices, signatures))
    return _spectrum(values, search)


def extended_beamformer_grid(corr: CorrSet, gamma_o, search: SearchConfig, exact: bool = False) -> PseudoSpectrum:
    """Sample the cost of [gamma_o; gamma_q] with gamma_o held fixed.

    The default samples sum_p tr{P_o R_p} - a^H P_o R_p a (real part), with
    P_o = P_perp(rho_p, gamma_o). With ``exact`` the added column is deflated,
    b = P_o a, and the samples equal the compressed cost of [gamma_o; gamma_q]:
    sum_p tr{P_o R_p} - b^H R_p b / ||b||^2. Where b vanishes (gamma_q on a
    fixed component) the exact form falls back to the default sample.

    Raises:
        SingularMatrixError: If A(rho_p, gamma_o) is rank deficient.
    """
    gamma_o = as_gamma(gamma_o)
    if gamma_o.size == 0:
        return beamformer_grid(corr, search)

    nodes = cheb_nodes(search.q_order, search.gamma_interval)
    signatures = signature_table(corr.cfg, corr.abscissas, nodes)
    q1 = thin_qr_stack(steering_matrix(corr.cfg, corr.abscissas, gamma_o))
    base = corr_cost(corr, gamma_o)

    # P_o R_p
    deflated_r = corr.matrices - q1 @ (adjoint(q1) @ corr.matrices)
    values = base - np.real(_quadratic_forms(signatures, deflated_r, signatures))
    if not exact:
        return _spectrum(values, search)

    # b_{p,q} = a_{p,q} - Q_p (Q_p^H a_{p,q})
    coords = np.einsum("pmk,pqm->pqk", q1.conj(), signatures)
    deflated = signatures - np.einsum("pmk,pqk->pqm", q1, coords)
    norms_sq = np.sum(np.abs(deflated) ** 2, axis=2)
    usable = np.all(norms_sq > RANK_TOL, axis=0)
    safe = np.where(norms_sq > 0, norms_sq, 1.0)
    forms = np.einsum("pqm,pmn,pqn->pq", deflated.conj(), corr.matrices, deflated, optimize=True)
    exact_values = base - np.real(np.sum(forms / safe, axis=0))
    return _spectrum(np.where(usable, exact_values, values), search)


def music_pseudospectrum_grid(corr: CorrSet, k: int, search: SearchConfig) -> PseudoSpectrum:
    """Sample the incoherent MUSIC pseudo-spectrum at the Q gamma nodes.

    With U_p the top-k eigenvectors of each bin covariance,
    value_q = k P_b - sum_p ||U_p^H a_{p,q}||^2.

    Raises:
        ValueError: If ``corr`` is not a bin compression or k is outside [1, M).
    """
    if corr.kind is not CorrKind.BIN:
        raise ValueError(f"IC-MUSIC needs a bin CorrSet, got {corr.kind.value}")
    if not 1 <= k < corr.n_sensors:
        raise ValueError(f"Signal subspace dimension must lie in [1, {corr.n_sensors - 1}], got {k}")

    subspaces = np.stack([hermitian_eig(matrix, k)[1] for matrix in corr.matrices])
    nodes = cheb_nodes(search.q_order, search.gamma_interval)
    signatures = signature_table(corr.cfg, corr.abscissas, nodes)
    projections = np.einsum("pmk,pqm->pqk", subspaces.conj(), signatures)
    values = k * corr.order - np.sum(np.abs(projections) ** 2, axis=(0, 2))
    return _spectrum(values, search)


def _interior_minima(values: np.ndarray) -> np.ndarray:
    # strict descent on the left, non-strict ascent on the right keeps one index per plateau
    inner = np.arange(1, values.size - 1)
    mask = (values[inner] < values[inner - 1]) & (values[inner] <= values[inner + 1])
    return inner[mask]


def _refine(series: ChebSeries, x0: float, lo: float, hi: float, search: SearchConfig) -> tuple[float, float]:
    """Newton iterations on the series inside [lo, hi], bounded minimization as fallback."""
    first = series.derivative()
    second = first.derivative()

    def value(x: float) -> float:
        return float(np.real(series(x)))

    start = value(x0)
    x, fx = x0, start
    for _ in range(search.newton_max_iter):
        d1 = float(np.real(first(x)))
        d2 = float(np.real(second(x)))
        if d2 <= 0.0:
            break
        step = -d1 / d2
        candidate = x + step
        if not lo < candidate < hi:
            break
        f_candidate = value(candidate)
        halvings = 0
        while f_candidate > fx and halvings < 30:
            step /= 2.0
            candidate = x + step
            f_candidate = value(candidate)
            halvings += 1
        if f_candidate > fx:
            return x, fx
        x, fx = candidate, f_candidate
        if abs(step) < search.newton_tol:
            return x, fx

    result = optimize.minimize_scalar(value, bounds=(lo, hi), method="bounded", options={"xatol": search.newton_tol})
    if result.success and float(result.fun) <= fx:
        logger.debug(f"Newton fell back to bounded search near gamma={x0:.6f}")
        return float(result.x), float(result.fun)
    return x, fx


def locate_minima(ps: PseudoSpectrum, count: int, search: SearchConfig) -> list[tuple[float, float]]:
    """Find and refine the ``count`` deepest interior minima of a pseudo-spectrum.

    Args:
        ps: Node samples and their series.
        count: Number of minima wanted.
        search: Oversampling factor and Newton settings.

    Returns:
        List of (gamma, interpolated value), deepest first.

    Raises:
        ValueError: If count < 1.
        MinimaShortageError: If fewer than ``count`` interior minima exist; ``found`` holds them.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    upsampled = cheb_oversample(ps.grid, search.oversampled_order)
    values = np.real(upsampled.values)
    nodes = upsampled.nodes
    candidates = sorted(_interior_minima(values), key=lambda i: (values[i], abs(nodes[i])))

    chosen = candidates[:count]
    refined = [_refine(ps.series, float(nodes[i]), float(nodes[i - 1]), float(nodes[i + 1]), search) for i in chosen]
    refined.sort(key=lambda item: (item[1], abs(item[0])))
    if len(refined) < count:
        raise MinimaShortageError(f"Found {len(refined)} interior minima, wanted {count}", found=refined)
    return refined


def spectrum_frame(ps: PseudoSpectrum, search: SearchConfig) -> pd.DataFrame:
    """Return the pseudo-spectrum at the oversampled nodes as a (gamma, value) frame."""
    upsampled = cheb_oversample(ps.grid, search.oversampled_order)
    return pd.DataFrame({"gamma": upsampled.nodes, "value": np.real(upsampled.values)})
