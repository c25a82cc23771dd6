"""Configuration for result export."""

from dataclasses import dataclass
from pathlib import Path

from .enums import OutputFormat


@dataclass
class ExportConfig:
    """Configuration for writing result tables."""

    output_format: OutputFormat | str = OutputFormat.CSV
    output_directory: Path | str = "."
    config_hash: str = ""
    generate_metadata: bool = False
    description: str = ""

    def __post_init__(self) -> None:
        """Normalize types and create the output directory."""
        if isinstance(self.output_format, str):
            self.output_format = OutputFormat(self.output_format.lower())
        if self.output_format is OutputFormat.NPZ:
            raise ValueError("NPZ is only available for snapshot fixtures, not result tables")

        if isinstance(self.output_directory, str):
            self.output_directory = Path(self.output_directory)
        self.output_directory.mkdir(parents=True, exist_ok=True)

    def file_path(self, name: str) -> Path:
        """Get the full file path for a named table."""
        return self.output_directory / f"{name}.{self.output_format.value}"

    def metadata_path(self, name: str) -> Path:
        """Get the path for a table's metadata file."""
        return self.output_directory / f"{name}_metadata.json"
