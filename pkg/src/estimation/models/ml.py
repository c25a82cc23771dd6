"""Deterministic ML estimators on the Chebyshev and bin compressions."""

from ...domain.entities import CorrSet, SnapshotSet
from ..cost import compress_bin, compress_cheb
from .base import DmlEstimator


class ChebMLEstimator(DmlEstimator):
    """DML on the Chebyshev-interpolated cost with P correlation matrices."""

    @property
    def name(self) -> str:
        """Return model identifier."""
        return "cheb_ml"

    def compress(self, snapshots: SnapshotSet) -> CorrSet:
        """Compute R_p at the P Chebyshev abscissas."""
        return compress_cheb(snapshots, self.order)


class BinMLEstimator(DmlEstimator):
    """DML on the bin-interpolated cost with P_b bin covariances."""

    def __init__(self, order: int, search=None, mvp=None, centered_on_indices: bool = False) -> None:
        """Initialize with the bin count and bin convention."""
        super().__init__(order, search, mvp)
        self.centered_on_indices = centered_on_indices

    @property
    def name(self) -> str:
        """Return model identifier."""
        return "bin_ml"

    def compress(self, snapshots: SnapshotSet) -> CorrSet:
        """Compute R_{b,p} over P_b equal-width bins."""
        return compress_bin(snapshots, self.order, self.centered_on_indices)
