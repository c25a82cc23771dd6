"""Configuration utility functions."""

from .configure_logging import configure_logging

__all__ = [
    "configure_logging",
]
