"""Main exporter class for experiment results."""

import json
from pathlib import Path

import pandas as pd

from ...domain.entities import SnapshotSet
from .config import ExportConfig
from .enums import OutputFormat
from .formatters import CSVFormatter, JSONFormatter
from .snapshots import write_snapshots


class ResultExporter:
    """Writes result tables and snapshot fixtures into one output directory.

    Every file carries the configuration hash so outputs can be traced back
    to the run that produced them.
    """

    def __init__(
        self,
        output_directory: str | Path,
        config_hash: str = "",
        output_format: OutputFormat | str = OutputFormat.CSV,
        generate_metadata: bool = False,
        description: str = "",
    ) -> None:
        """Initialize the exporter.

        Args:
            output_directory: Directory where files will be saved (created if missing).
            config_hash: Hash of the configuration that produced the results.
            output_format: Table format (csv or json).
            generate_metadata: Whether to write a metadata JSON next to each table.
            description: Optional description stored in metadata.
        """
        self.config = ExportConfig(
            output_format=output_format,
            output_directory=output_directory,
            config_hash=config_hash,
            generate_metadata=generate_metadata,
            description=description,
        )
        self.formatter = self._create_formatter()
        self.written: list[Path] = []

    def _create_formatter(self):
        """Create the appropriate formatter based on output format."""
        if self.config.output_format == OutputFormat.CSV:
            return CSVFormatter(self.config)
        elif self.config.output_format == OutputFormat.JSON:
            return JSONFormatter(self.config)
        else:
            raise ValueError(f"Unsupported output format: {self.config.output_format}")

    @property
    def output_directory(self) -> Path:
        """Get the output directory."""
        return self.config.output_directory

    def write_table(self, name: str, frame: pd.DataFrame, metadata: dict | None = None) -> Path:
        """Write one result table and remember its path."""
        if metadata is not None and self.config.description:
            metadata = {**metadata, "description": self.config.description}
        path = self.formatter.export(name, frame, metadata)
        self.written.append(path)
        return path

    def write_records(self, name: str, records: list[dict], metadata: dict | None = None) -> Path:
        """Write nested records (e.g. estimation results with traces) as ``name.json``.

        Records are JSON regardless of the table format since they do not fit a flat table.
        """
        output = {"config_hash": self.config.config_hash, "records": records}
        if metadata:
            output["metadata"] = metadata
        path = self.output_directory / f"{name}.{OutputFormat.JSON.value}"
        with open(path, "w") as f:
            json.dump(output, f, indent=2)
        self.written.append(path)
        return path

    def write_snapshots(self, name: str, snapshots: SnapshotSet, output_format: OutputFormat | str = "csv") -> Path:
        """Write a snapshot fixture (csv or npz) with its metadata sidecar."""
        path = write_snapshots(snapshots, self.output_directory / name, output_format, self.config.config_hash)
        self.written.append(path)
        return path
