"""Numeric primitives: Chebyshev interpolation and dense complex linear algebra."""

from .chebyshev import (
    UNIT_INTERVAL,
    ChebGrid,
    ChebSeries,
    Interval,
    cheb_derivative,
    cheb_eval,
    cheb_fit,
    cheb_nodes,
    cheb_oversample,
    cheb_weight_matrix,
    cheb_weights,
    dct2,
    dct3,
)
from .linalg import (
    RANK_TOL,
    ComplexNormalStream,
    QRFactors,
    SingularMatrixError,
    adjoint,
    chi2_inv_cdf,
    hermitian_eig,
    mix_seed,
    seeded_rng,
    thin_qr,
    thin_qr_stack,
)

__all__ = [
    # Chebyshev
    "Interval",
    "UNIT_INTERVAL",
    "ChebGrid",
    "ChebSeries",
    "cheb_nodes",
    "cheb_fit",
    "cheb_eval",
    "cheb_weights",
    "cheb_weight_matrix",
    "cheb_oversample",
    "cheb_derivative",
    "dct2",
    "dct3",
    # Linear algebra
    "RANK_TOL",
    "QRFactors",
    "adjoint",
    "SingularMatrixError",
    "thin_qr",
    "thin_qr_stack",
    "hermitian_eig",
    "chi2_inv_cdf",
    "ComplexNormalStream",
    "seeded_rng",
    "mix_seed",
]
