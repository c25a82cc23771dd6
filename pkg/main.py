"""Main entry point for the wideband DOA toolkit."""

import sys

from src.cli.cli import run_cli
from src.config import configure_logging


def main() -> int:
    """Initialize logging and run the CLI."""
    configure_logging()
    return run_cli()


if __name__ == "__main__":
    sys.exit(main())
