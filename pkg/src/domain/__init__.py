"""Domain module - data containers, enums and sensor patterns.

This module contains data containers with no estimation logic.
All computation is handled by the estimation and simulation modules.
"""

from .entities import (
    CorrSet,
    Decision,
    EstimationResult,
    MvpState,
    PseudoSpectrum,
    SnapshotSet,
    TraceEntry,
)
from .enums import CorrKind, EstimatorKind, ScenarioKind, StepKind
from .patterns import CardioidPattern, IsotropicPattern, SensorPattern, pattern_from_name

__all__ = [
    # Entities
    "SnapshotSet",
    "CorrSet",
    "PseudoSpectrum",
    "MvpState",
    "TraceEntry",
    "Decision",
    "EstimationResult",
    # Enums
    "ScenarioKind",
    "CorrKind",
    "EstimatorKind",
    "StepKind",
    # Patterns
    "SensorPattern",
    "IsotropicPattern",
    "CardioidPattern",
    "pattern_from_name",
]
