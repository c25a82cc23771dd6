"""Dense complex linear algebra and statistics primitives.

Thin Householder QR (LAPACK geqrf through scipy), top-k Hermitian eigenpairs,
the chi-squared inverse CDF and seeded complex Gaussian streams.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sl
from scipy import special

# |R_kk| below RANK_TOL * ||A|| declares rank deficiency
RANK_TOL = 1e-12


class SingularMatrixError(ValueError):
    """Raised when a matrix that must have full column rank does not."""

    def __init__(self, message: str, column: int) -> None:
        """Initialize with the index of the first dependent column."""
        super().__init__(message)
        self.column = column


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose over the last two axes (works on stacks)."""
    return np.conj(np.swapaxes(a, -1, -2))


@dataclass(frozen=True, eq=False)
class QRFactors:
    """Thin QR factors: ``q1`` is M x K with orthonormal columns, ``rfac`` is K x K upper triangular."""

    q1: np.ndarray
    rfac: np.ndarray

    def solve_rfac(self, b: np.ndarray, adjoint: bool = False) -> np.ndarray:
        """Solve rfac @ x = b (or rfac^H @ x = b)."""
        return sl.solve_triangular(self.rfac, b, lower=False, trans="C" if adjoint else "N")


def thin_qr(a: np.ndarray) -> QRFactors:
    """Factor a full-column-rank matrix as A = Q1 @ R.

    Args:
        a: M x K matrix with M >= K. K = 0 is allowed and yields empty factors.

    Returns:
        QRFactors with orthonormal Q1 (M x K) and upper-triangular R (K x K).

    Raises:
        ValueError: If A has more columns than rows.
        SingularMatrixError: If |R_kk| < RANK_TOL * ||A||; ``column`` is k.
    """
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValueError(f"thin_qr expects a 2-D matrix, got shape {a.shape}")
    rows, cols = a.shape
    if cols > rows:
        raise ValueError(f"thin_qr needs rows >= cols, got {rows}x{cols}")
    if cols == 0:
        return QRFactors(np.zeros((rows, 0), dtype=complex), np.zeros((0, 0), dtype=complex))

    q1, rfac = sl.qr(a, mode="economic")
    scale = np.linalg.norm(a)
    diag = np.abs(np.diag(rfac))
    bad = np.flatnonzero(diag < RANK_TOL * scale)
    if bad.size:
        raise SingularMatrixError(
            f"Matrix is rank deficient at column {bad[0]} (|R_kk|={diag[bad[0]]:.3e}, ||A||={scale:.3e})",
            column=int(bad[0]),
        )
    return QRFactors(q1, rfac)


def thin_qr_stack(a: np.ndarray) -> np.ndarray:
    """Return the orthonormal factors Q1 of a stack of M x K matrices, shape (n, M, K).

    Batched counterpart of ``thin_qr`` for the many small factorizations of a
    frequency sweep; only Q1 is returned.

    Raises:
        SingularMatrixError: If any matrix in the stack is rank deficient.
    """
    a = np.asarray(a)
    if a.ndim != 3:
        raise ValueError(f"thin_qr_stack expects a stack of matrices, got shape {a.shape}")
    _, rows, cols = a.shape
    if cols > rows:
        raise ValueError(f"thin_qr_stack needs rows >= cols, got {rows}x{cols}")
    if cols == 0:
        return np.zeros(a.shape, dtype=complex)

    q1, rfac = np.linalg.qr(a, mode="reduced")
    scale = np.linalg.norm(a, axis=(1, 2))
    diag = np.abs(np.diagonal(rfac, axis1=1, axis2=2))
    bad = np.argwhere(diag < RANK_TOL * scale[:, None])
    if bad.size:
        which, column = (int(v) for v in bad[0])
        raise SingularMatrixError(f"Matrix {which} of the stack is rank deficient at column {column}", column=column)
    return q1


def hermitian_eig(h: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Return the top-k eigenpairs of a Hermitian matrix.

    The input is symmetrized as (H + H^H) / 2 before the decomposition.

    Args:
        h: Square (numerically) Hermitian matrix.
        k: Number of leading eigenpairs, 1 <= k <= dim.

    Returns:
        Tuple (eigenvalues descending, M x k orthonormal eigenvectors).

    Raises:
        ValueError: On non-square input or k outside [1, dim].
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"hermitian_eig expects a square matrix, got shape {h.shape}")
    dim = h.shape[0]
    if not 1 <= k <= dim:
        raise ValueError(f"k must lie in [1, {dim}], got {k}")
    sym = 0.5 * (h + h.conj().T)
    values, vectors = sl.eigh(sym, subset_by_index=[dim - k, dim - 1])
    return values[::-1], vectors[:, ::-1]


def chi2_inv_cdf(p: float, dof: int) -> float:
    """Inverse chi-squared CDF via the inverse regularized lower incomplete gamma.

    F(x; dof) = P(dof/2, x/2), so x = 2 * P^{-1}(dof/2, p).

    Raises:
        ValueError: If p is not in (0, 1) or dof < 1.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"Probability must lie in (0, 1), got {p}")
    if dof < 1:
        raise ValueError(f"Degrees of freedom must be >= 1, got {dof}")
    return float(2.0 * special.gammaincinv(dof / 2.0, p))


class ComplexNormalStream:
    """Deterministic stream of circular complex Gaussians with unit variance.

    Real and imaginary parts are independent N(0, 1/2). One stream belongs to one
    consumer; independent streams come from ``spawn``.
    """

    def __init__(self, seed: int | np.random.SeedSequence) -> None:
        """Initialize from an integer seed or a SeedSequence."""
        self._seed_seq = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
        self._rng = np.random.Generator(np.random.PCG64(self._seed_seq))

    def draw(self, shape) -> np.ndarray:
        """Draw complex samples of the given shape."""
        shape = (shape,) if isinstance(shape, int | np.integer) else tuple(shape)
        parts = self._rng.standard_normal((2, *shape))
        return (parts[0] + 1j * parts[1]) * np.sqrt(0.5)

    def spawn(self, count: int) -> list["ComplexNormalStream"]:
        """Derive ``count`` independent child streams."""
        return [ComplexNormalStream(child) for child in self._seed_seq.spawn(count)]

    @property
    def generator(self) -> np.random.Generator:
        """Return the underlying numpy Generator."""
        return self._rng


def seeded_rng(seed: int) -> ComplexNormalStream:
    """Return a complex Gaussian stream for a 64-bit seed."""
    return ComplexNormalStream(seed)


def mix_seed(seed: int, *keys: int) -> np.random.SeedSequence:
    """Derive a per-trial SeedSequence from a base seed and integer keys."""
    return np.random.SeedSequence([seed, *keys])
