"""DOA estimator classes and the factory that builds them from config."""

from ...config.settings import EstimatorSpec, MvpOptions, SearchConfig
from ...domain.enums import EstimatorKind
from .base import DmlEstimator, DoaEstimator
from .ml import BinMLEstimator, ChebMLEstimator
from .spectral import BeamformerEstimator, ICMusicEstimator

_REGISTRY: dict[EstimatorKind, type[DoaEstimator]] = {
    EstimatorKind.CHEB_ML: ChebMLEstimator,
    EstimatorKind.BIN_ML: BinMLEstimator,
    EstimatorKind.IC_MUSIC: ICMusicEstimator,
    EstimatorKind.BEAMFORMER: BeamformerEstimator,
}


def build_estimator(spec: EstimatorSpec, search: SearchConfig | None = None, mvp: MvpOptions | None = None) -> DoaEstimator:
    """Create the estimator described by ``spec``."""
    return _REGISTRY[spec.kind](spec.order, search, mvp)


__all__ = [
    "DoaEstimator",
    "DmlEstimator",
    "ChebMLEstimator",
    "BinMLEstimator",
    "ICMusicEstimator",
    "BeamformerEstimator",
    "build_estimator",
]
