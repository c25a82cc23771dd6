"""Estimators that read K minima off a single pseudo-spectrum.

Neither one has a detection test; both need K.
"""

import logging
from abc import abstractmethod

from ...config.settings import DetectorConfig
from ...domain.entities import CorrSet, EstimationResult, PseudoSpectrum, SnapshotSet, TraceEntry
from ...domain.enums import StepKind
from ..cost import compress_bin, compress_cheb, corr_cost
from ..search1d import beamformer_grid, locate_minima, music_pseudospectrum_grid
from .base import DoaEstimator

logger = logging.getLogger(__name__)


class _SpectralEstimator(DoaEstimator):
    @property
    def supports_detection(self) -> bool:
        """Spectral estimators need K."""
        return False

    @abstractmethod
    def _spectrum(self, corr: CorrSet, k: int) -> PseudoSpectrum:
        """Return the search function whose K deepest minima are the estimates."""
        pass

    def pseudo_spectrum(self, corr: CorrSet, k: int) -> PseudoSpectrum:
        """Return the estimator's own search function for K components."""
        return self._spectrum(corr, k)

    def estimate_from_corr(self, corr: CorrSet, k: int | None, detector: DetectorConfig | None) -> EstimationResult:
        """Take the K deepest refined minima of the pseudo-spectrum.

        Raises:
            ValueError: If k is None.
            MinimaShortageError: If the spectrum has fewer than K minima.
        """
        if k is None:
            raise ValueError(f"{self.name} needs a known number of components")
        if k == 0:
            return EstimationResult([], [])
        minima = locate_minima(self._spectrum(corr, k), k, self.search)
        gamma = [g for g, _ in minima]
        trace = [TraceEntry(StepKind.DETECT, k, 0, float(value)) for _, value in minima]
        try:
            trace.append(TraceEntry(StepKind.REFINE, k, 0, corr_cost(corr, gamma)))
        except ValueError as e:
            logger.debug(f"{self.name}: cost at the estimate is undefined ({e})")
        return EstimationResult(gamma, trace)


class ICMusicEstimator(_SpectralEstimator):
    """Incoherent MUSIC: per-bin signal subspaces, summed pseudo-spectrum."""

    @property
    def name(self) -> str:
        """Return model identifier."""
        return "ic_music"

    def compress(self, snapshots: SnapshotSet) -> CorrSet:
        """Compute the P_b bin covariances."""
        return compress_bin(snapshots, self.order)

    def _spectrum(self, corr: CorrSet, k: int):
        return music_pseudospectrum_grid(corr, k, self.search)


class BeamformerEstimator(_SpectralEstimator):
    """Wideband beamformer: K deepest minima of the single-component compressed cost."""

    @property
    def name(self) -> str:
        """Return model identifier."""
        return "beamformer"

    def compress(self, snapshots: SnapshotSet) -> CorrSet:
        """Compute R_p at the P Chebyshev abscissas."""
        return compress_cheb(snapshots, self.order)

    def _spectrum(self, corr: CorrSet, k: int):
        return beamformer_grid(corr, self.search)
