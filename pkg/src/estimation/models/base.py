"""Base classes for DOA estimators."""

from abc import ABC, abstractmethod

from ...config.settings import DetectorConfig, MvpOptions, SearchConfig
from ...domain.entities import CorrSet, EstimationResult, PseudoSpectrum, SnapshotSet
from ..estimator import estimate_known_k, run_detection_estimation
from ..search1d import beamformer_grid


class DoaEstimator(ABC):
    """Abstract base class for direction-of-arrival estimators.

    All estimators compress a snapshot set into correlation matrices and
    estimate from those alone, so the experiment harness can treat them
    interchangeably.
    """

    def __init__(self, order: int, search: SearchConfig | None = None, mvp: MvpOptions | None = None) -> None:
        """Initialize the estimator.

        Args:
            order: Compression order (P for Chebyshev, P_b for bins).
            search: One-dimensional search settings. Defaults to SearchConfig().
            mvp: MVP refinement settings. Defaults to MvpOptions().
        """
        if order < 1:
            raise ValueError(f"Estimator order must be >= 1, got {order}")
        self.order = order
        self.search = search or SearchConfig()
        self.mvp = mvp or MvpOptions()

    @property
    @abstractmethod
    def name(self) -> str:
        """Return a unique identifier for this estimator."""
        pass

    @property
    def label(self) -> str:
        """Return ``name:order``."""
        return f"{self.name}:{self.order}"

    @property
    def supports_detection(self) -> bool:
        """Whether ``estimate`` can run without a known K.

        Override to return False for estimators without a detection test.
        """
        return True

    @abstractmethod
    def compress(self, snapshots: SnapshotSet) -> CorrSet:
        """Compress snapshots into the correlation matrices this estimator works on."""
        pass

    @abstractmethod
    def estimate_from_corr(self, corr: CorrSet, k: int | None, detector: DetectorConfig | None) -> EstimationResult:
        """Estimate from already compressed data."""
        pass

    def pseudo_spectrum(self, corr: CorrSet, k: int) -> PseudoSpectrum:
        """Return the search function of the first component (the wideband beamformer).

        ``k`` is unused here; subspace estimators need it.
        """
        return beamformer_grid(corr, self.search)

    def estimate(self, snapshots: SnapshotSet, k: int | None = None, detector: DetectorConfig | None = None) -> EstimationResult:
        """Estimate the directions in a snapshot set.

        Args:
            snapshots: Frequency-domain array data.
            k: Number of components when known; None runs detection-estimation.
            detector: Detection settings, required when ``k`` is None.

        Returns:
            EstimationResult labeled with this estimator.
        """
        if k is None and not self.supports_detection:
            raise ValueError(f"{self.name} needs a known number of components")
        if k is None and detector is None:
            raise ValueError("Detection-estimation needs a DetectorConfig")
        result = self.estimate_from_corr(self.compress(snapshots), k, detector)
        result.estimator = self.label
        return result


class DmlEstimator(DoaEstimator):
    """Deterministic ML on a compressed cost: detection-estimation or known-K rounds."""

    def estimate_from_corr(self, corr: CorrSet, k: int | None, detector: DetectorConfig | None) -> EstimationResult:
        """Run the known-K rounds or the detection-estimation loop."""
        if k is None:
            return run_detection_estimation(corr, detector, self.search, self.mvp)
        return estimate_known_k(corr, k, self.search, self.mvp, detector)
