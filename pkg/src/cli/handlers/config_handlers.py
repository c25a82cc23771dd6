"""Configuration-related command handlers and the run context shared by every subcommand."""

import argparse
import logging
from dataclasses import dataclass
from pathlib import Path

from src.cli.utils import DisplayHelper
from src.config import ExperimentConfig, config_hash, dump_config, load_config, override_config
from src.simulation.export import ResultExporter, RunManifest

logger = logging.getLogger(__name__)


def load_run_config(args: argparse.Namespace) -> ExperimentConfig:
    """Load ``--config`` (or the built-in defaults) and apply the override flags."""
    config = load_config(args.config) if args.config else ExperimentConfig.with_defaults()
    return override_config(
        config,
        seed=args.seed,
        trials=getattr(args, "trials", None),
        workers=getattr(args, "workers", None),
        output_dir=Path(args.out) if args.out else None,
    )


@dataclass
class RunContext:
    """Configuration, exporter and manifest of one CLI run."""

    config: ExperimentConfig
    exporter: ResultExporter
    manifest: RunManifest

    @classmethod
    def start(
        cls, command: str, config: ExperimentConfig, generate_metadata: bool = False, table_format: str = "csv"
    ) -> "RunContext":
        """Create the exporter in ``config.output_dir`` and an empty manifest."""
        digest = config_hash(config)
        exporter = ResultExporter(
            config.output_dir, config_hash=digest, output_format=table_format, generate_metadata=generate_metadata
        )
        manifest = RunManifest(command=command, config_text=dump_config(config), config_hash=digest)
        logger.info(f"{command}: config {digest}, output in {config.output_dir}")
        return cls(config, exporter, manifest)

    def finish(self) -> Path:
        """Record the written files and write ``manifest.json``."""
        self.manifest.outputs = [str(path) for path in self.exporter.written]
        path = self.manifest.write(self.exporter.output_directory)
        DisplayHelper.print_success(
            "\n".join([*self.manifest.outputs, str(path)]), title=f"{self.manifest.command}: files written"
        )
        return path


def handle_show_config(args: argparse.Namespace) -> int:
    """Print the canonical configuration text (after overrides) and its hash."""
    config = load_run_config(args)
    DisplayHelper.print_panel(dump_config(config).rstrip(), title=f"Configuration {config_hash(config)}")
    return 0
