"""Display utilities for CLI output formatting."""

import math
from collections.abc import Callable, Iterator
from contextlib import contextmanager

import pandas as pd
from rich.console import Console
from rich.panel import Panel
from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn, TimeElapsedColumn
from rich.table import Table

console = Console()


class DisplayHelper:
    """Helper class for consistent display formatting across the CLI."""

    @staticmethod
    def print_panel(content: str, title: str, border_style: str = "green") -> None:
        """Print content to a panel with title.

        Args:
            content: Content to display in the panel.
            title: Panel title.
            border_style: Rich border style (default: "green").

        """
        console.print(Panel(content, title=title, border_style=border_style))

    @staticmethod
    def create_summary_table(title: str, data: dict[str, str]) -> Table:
        """Create a summary table with key-value pairs.

        Args:
            title: Table title.
            data: Dictionary of key-value pairs to display.

        Returns:
            Rich Table object.

        """
        table = Table(title=title, show_header=True, header_style="bold cyan", show_lines=True)
        table.add_column("Setting", style="cyan", no_wrap=True)
        table.add_column("Value", style="green")
        for key, value in data.items():
            table.add_row(key, value, style="default")
        return table

    @staticmethod
    def create_frame_table(title: str, frame: pd.DataFrame, max_rows: int = 40) -> Table:
        """Render a result frame as a table; floats get 4 significant digits.

        Args:
            title: Table title.
            frame: Result frame.
            max_rows: Rows beyond this are elided with a final "..." row.

        Returns:
            Rich Table object.

        """
        table = Table(title=title, show_header=True, header_style="bold cyan")
        for column in frame.columns:
            table.add_column(str(column), justify="right" if pd.api.types.is_numeric_dtype(frame[column]) else "left")
        for row in frame.head(max_rows).itertuples(index=False):
            table.add_row(*(_format_cell(value) for value in row))
        if len(frame) > max_rows:
            table.add_row(*(["..."] * len(frame.columns)))
        return table

    @staticmethod
    def print_table(table: Table) -> None:
        """Print a table with consistent spacing.

        Args:
            table: Rich Table object to display.

        """
        console.print()
        console.print(table)
        console.print()

    @staticmethod
    def print_error(message: str, title: str = "Error") -> None:
        """Print an error message in a panel."""
        console.print(Panel(message, title=title, border_style="red"))

    @staticmethod
    def print_success(message: str, title: str = "Success") -> None:
        """Print a success message in a panel."""
        console.print(Panel(message, title=title, border_style="green"))

    @staticmethod
    def print_warning(message: str, title: str = "Warning") -> None:
        """Print a warning message in a panel."""
        console.print(Panel(message, title=title, border_style="yellow"))

    @staticmethod
    def print_info(message: str, title: str = "Information") -> None:
        """Print an info message in a panel."""
        console.print(Panel(message, title=title, border_style="cyan"))

    @staticmethod
    @contextmanager
    def trial_progress(description: str) -> Iterator[Callable[[int, int], None]]:
        """Yield a (completed, total) callback that drives a progress bar."""
        with Progress(
            TextColumn("[cyan]{task.description}"),
            BarColumn(),
            MofNCompleteColumn(),
            TimeElapsedColumn(),
            console=console,
            transient=True,
        ) as progress:
            task = progress.add_task(description, total=None)

            def update(completed: int, total: int) -> None:
                progress.update(task, completed=completed, total=total)

            yield update


def _format_cell(value) -> str:
    if isinstance(value, float):
        if math.isnan(value):
            return "[dim]nan[/dim]"
        return f"{value:.4g}"
    return str(value)
