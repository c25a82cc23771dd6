"""Configuration module for the wideband DOA toolkit.

Provides:
- ExperimentConfig and its frozen section dataclasses
- Plain-text loading, canonical dumping and hashing
- Logging setup
"""

from .functions.configure_logging import configure_logging
from .loader import ConfigLoadError, config_hash, dump_config, load_config, override_config, parse_config_text
from .settings import (
    SPEED_OF_LIGHT,
    ArrayConfig,
    DetectorConfig,
    EstimatorSpec,
    ExperimentConfig,
    MvpOptions,
    ScenarioConfig,
    SearchConfig,
)

__all__ = [
    # Main settings
    "ExperimentConfig",
    "ArrayConfig",
    "ScenarioConfig",
    "SearchConfig",
    "DetectorConfig",
    "MvpOptions",
    "EstimatorSpec",
    "SPEED_OF_LIGHT",
    # Loading utilities
    "load_config",
    "parse_config_text",
    "dump_config",
    "config_hash",
    "override_config",
    "ConfigLoadError",
    "configure_logging",
]
