"""Base formatter class for export formats."""

import json
from abc import ABC, abstractmethod
from pathlib import Path

import pandas as pd

from ..config import ExportConfig


class BaseFormatter(ABC):
    """Base class for format-specific table writers."""

    def __init__(self, config: ExportConfig) -> None:
        """Initialize formatter.

        Args:
            config: Export configuration.
        """
        self.config = config

    @abstractmethod
    def export(self, name: str, frame: pd.DataFrame, metadata: dict | None = None) -> Path:
        """Write one table.

        Args:
            name: Table name (file stem).
            frame: Table rows.
            metadata: Optional metadata dictionary.

        Returns:
            Path to the created file.
        """
        pass

    def _write_metadata(self, name: str, metadata: dict) -> None:
        """Write metadata to a JSON sidecar file."""
        with open(self.config.metadata_path(name), "w") as f:
            json.dump(metadata, f, indent=2, default=str)
