"""CLI utility modules for display."""

from .display import DisplayHelper

__all__ = ["DisplayHelper"]
