"""CSV formatter for result tables."""

from pathlib import Path

import pandas as pd

from .base import BaseFormatter

# Comment rows start with this prefix; readers pass comment="#" to pandas
COMMENT_PREFIX = "# "


class CSVFormatter(BaseFormatter):
    """Export tables to CSV with a leading ``# config_hash=...`` comment row."""

    def export(self, name: str, frame: pd.DataFrame, metadata: dict | None = None) -> Path:
        """Write the comment row, then the header and rows."""
        path = self.config.file_path(name)
        with open(path, "w", newline="") as f:
            f.write(f"{COMMENT_PREFIX}config_hash={self.config.config_hash}\n")
            frame.to_csv(f, index=False, float_format="%.17g")

        if metadata and self.config.generate_metadata:
            self._write_metadata(name, {**metadata, "rows": len(frame)})
        return path


def read_table(path: Path) -> pd.DataFrame:
    """Read a CSV written by CSVFormatter, skipping comment rows."""
    return pd.read_csv(path, comment="#", float_precision="round_trip")
