"""Estimation module for wideband DOA.

This module provides:
- Array model (steering matrices, derivatives, projectors, signatures)
- Exact, Chebyshev-compressed and bin-compressed DML costs
- One-dimensional Chebyshev-interpolated searches
- The detection-estimation loop with MVP refinement
- Estimator classes used by the experiment harness
"""

from .array_model import (
    as_gamma,
    check_distinct,
    normalized_signature,
    projection_orth,
    signature_table,
    steering_derivative,
    steering_matrix,
)
from .cost import (
    BinLayout,
    InterpErrorCurve,
    NumericalConsistencyError,
    compress_bin,
    compress_cheb,
    corr_cost,
    corr_eigenvalues,
    cost_bin,
    cost_cheb,
    cost_exact,
    interp_error_sweep,
    projected_traces,
    projector_interp_error,
)
from .estimator import (
    MaxComponentsError,
    detect_step,
    detection_threshold,
    estimate_known_k,
    mvp_gradient_hessian,
    mvp_refine,
    run_detection_estimation,
)
from .models import (
    BeamformerEstimator,
    BinMLEstimator,
    ChebMLEstimator,
    DoaEstimator,
    ICMusicEstimator,
    build_estimator,
)
from .search1d import (
    MinimaShortageError,
    beamformer_grid,
    extended_beamformer_grid,
    locate_minima,
    music_pseudospectrum_grid,
    spectrum_frame,
)

__all__ = [
    # Array model
    "steering_matrix",
    "steering_derivative",
    "projection_orth",
    "normalized_signature",
    "signature_table",
    "as_gamma",
    "check_distinct",
    # Cost
    "compress_cheb",
    "compress_bin",
    "BinLayout",
    "corr_cost",
    "cost_exact",
    "cost_cheb",
    "cost_bin",
    "projected_traces",
    "corr_eigenvalues",
    "interp_error_sweep",
    "projector_interp_error",
    "InterpErrorCurve",
    "NumericalConsistencyError",
    # Search
    "beamformer_grid",
    "extended_beamformer_grid",
    "music_pseudospectrum_grid",
    "locate_minima",
    "spectrum_frame",
    "MinimaShortageError",
    # Estimator
    "detection_threshold",
    "detect_step",
    "mvp_gradient_hessian",
    "mvp_refine",
    "run_detection_estimation",
    "estimate_known_k",
    "MaxComponentsError",
    # Models
    "DoaEstimator",
    "ChebMLEstimator",
    "BinMLEstimator",
    "ICMusicEstimator",
    "BeamformerEstimator",
    "build_estimator",
]
