"""Simulation module for generating and exporting array data."""

from .export import (
    ExportConfig,
    OutputFormat,
    ResultExporter,
    RunManifest,
    read_snapshots,
    read_table,
    write_snapshots,
)
from .generator import generate_baseband, generate_snapshots, measured_snr_db, symbol_period
from .pulses import raised_cosine_pulse, raised_cosine_spectrum

__all__ = [
    # Pulses
    "raised_cosine_pulse",
    "raised_cosine_spectrum",
    # Generator
    "generate_baseband",
    "generate_snapshots",
    "measured_snr_db",
    "symbol_period",
    # Export
    "ResultExporter",
    "ExportConfig",
    "OutputFormat",
    "RunManifest",
    "read_table",
    "write_snapshots",
    "read_snapshots",
]
