"""Domain enumerations.

Contains all enums used throughout the estimation and simulation code.
"""

from enum import Enum


class ScenarioKind(Enum):
    """Simulation scenarios for the impinging signals.

    - INDEPENDENT: each wave carries its own symbol sequence
    - CORRELATED: all waves share one symbol sequence (different gains and delays)
    """

    INDEPENDENT = "is"
    CORRELATED = "cs"

    @classmethod
    def from_value(cls, value: str) -> "ScenarioKind":
        """Parse 'IS' / 'CS' (case-insensitive) or the long names."""
        normalized = str(value).strip().lower()
        for kind in cls:
            if normalized in (kind.value, kind.name.lower()):
                return kind
        raise ValueError(f"Unknown scenario kind: {value!r} (expected IS or CS)")


class CorrKind(Enum):
    """How the frequency-domain data were compressed into correlation matrices."""

    CHEBYSHEV = "chebyshev"
    BIN = "bin"

    @classmethod
    def from_value(cls, value: str) -> "CorrKind":
        """Parse a compression kind name."""
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(f"Unknown interpolation method: {value!r} (expected chebyshev or bin)") from None


class EstimatorKind(Enum):
    """Estimators available to the experiment harness."""

    CHEB_ML = "cheb_ml"
    BIN_ML = "bin_ml"
    IC_MUSIC = "ic_music"
    BEAMFORMER = "beamformer"

    @classmethod
    def from_value(cls, value: str) -> "EstimatorKind":
        """Parse an estimator name."""
        normalized = str(value).strip().lower().replace("-", "_")
        try:
            return cls(normalized)
        except ValueError:
            choices = ", ".join(kind.value for kind in cls)
            raise ValueError(f"Unknown estimator: {value!r} (expected one of {choices})") from None

    @property
    def corr_kind(self) -> CorrKind:
        """Return the compression this estimator operates on."""
        if self in (EstimatorKind.CHEB_ML, EstimatorKind.BEAMFORMER):
            return CorrKind.CHEBYSHEV
        return CorrKind.BIN


class StepKind(Enum):
    """Entries of the detection-estimation trace."""

    DETECT = "detect"
    REFINE = "refine"
