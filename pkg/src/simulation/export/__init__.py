"""Export module for results, snapshot fixtures and run manifests."""

from .config import ExportConfig
from .enums import OutputFormat
from .exporter import ResultExporter
from .formatters import read_table
from .manifest import MANIFEST_NAME, RunManifest, library_versions
from .snapshots import read_snapshots, write_snapshots

__all__ = [
    "ResultExporter",
    "ExportConfig",
    "OutputFormat",
    "read_table",
    "write_snapshots",
    "read_snapshots",
    "RunManifest",
    "MANIFEST_NAME",
    "library_versions",
]
