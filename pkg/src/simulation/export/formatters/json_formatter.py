"""JSON formatter for result tables."""

import json
from pathlib import Path

import pandas as pd

from .base import BaseFormatter


class JSONFormatter(BaseFormatter):
    """Export tables to JSON as a list of records plus the config hash."""

    def export(self, name: str, frame: pd.DataFrame, metadata: dict | None = None) -> Path:
        """Write ``{"config_hash": ..., "data": [...], "metadata": ...}``."""
        output = {
            "config_hash": self.config.config_hash,
            "data": json.loads(frame.to_json(orient="records")),
        }
        if metadata:
            output["metadata"] = metadata

        path = self.config.file_path(name)
        with open(path, "w") as f:
            json.dump(output, f, indent=2, default=str)

        if metadata and self.config.generate_metadata:
            self._write_metadata(name, metadata)
        return path
