"""Simulation-related command handlers."""

import argparse
import logging
from dataclasses import replace

from src.cli.utils import DisplayHelper
from src.simulation import generate_snapshots

from .config_handlers import RunContext, load_run_config

logger = logging.getLogger(__name__)


def handle_simulate(args: argparse.Namespace) -> int:
    """Generate one snapshot set from the configured scenario and write it as a fixture."""
    config = load_run_config(args)
    if args.snr is not None:
        config = replace(config, scenario=replace(config.scenario, snr_db=args.snr))
    run = RunContext.start("simulate", config)

    with run.manifest.stage("generate"):
        snapshots = generate_snapshots(config.scenario, config.array, config.seed)
    path = run.exporter.write_snapshots(args.name, snapshots, args.format)

    scenario = config.scenario
    summary = {
        "File": str(path),
        "Scenario": scenario.kind.name.lower(),
        "Sensors x indices": f"{snapshots.n_sensors} x {snapshots.n_indices}",
        "SNR": "noiseless" if scenario.noiseless else f"{scenario.snr_db} dB",
        "Noise variance": f"{snapshots.noise_var:.6g}",
        "Signal power": f"{snapshots.signal_power:.6g}",
        "Gamma": ", ".join(f"{g:g}" for g in snapshots.gamma_true),
        "Seed": str(config.seed),
    }
    DisplayHelper.print_table(DisplayHelper.create_summary_table("Snapshot fixture", summary))
    run.finish()
    return 0
