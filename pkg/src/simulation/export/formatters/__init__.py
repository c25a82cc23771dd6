"""Export formatters for different file formats."""

from .base import BaseFormatter
from .csv_formatter import CSVFormatter, read_table
from .json_formatter import JSONFormatter

__all__ = [
    "BaseFormatter",
    "CSVFormatter",
    "JSONFormatter",
    "read_table",
]
