"""Monte-Carlo command handlers (RMSE and detection)."""

import argparse
import logging

from src.cli.utils import DisplayHelper
from src.experiments import run_detection_experiment, run_rmse_experiment

from .config_handlers import RunContext, load_run_config

logger = logging.getLogger(__name__)


def _estimator_summary(run: RunContext) -> str:
    config = run.config
    return (
        f"Estimators: {', '.join(spec.label for spec in config.estimators)}\n"
        f"Scenario: {config.scenario.kind.name.lower()}, gamma = {config.scenario.gamma_true}\n"
        f"SNR grid: {config.snr_grid_db} dB, {config.trials} trials, seed {config.seed}, {config.workers} worker(s)"
    )


def handle_rmse(args: argparse.Namespace) -> int:
    """Run known-K estimation for every estimator and SNR; write ``rmse.csv``."""
    config = load_run_config(args)
    run = RunContext.start("rmse", config, args.metadata, args.format)
    DisplayHelper.print_info(_estimator_summary(run), title="RMSE experiment")

    with run.manifest.stage("trials"), DisplayHelper.trial_progress("RMSE trials") as progress:
        table = run_rmse_experiment(config, progress)
    run.exporter.write_table("rmse", table.frame, {"gamma_true": list(table.gamma_true), "trials": config.trials})

    columns = ["estimator", "order", "snr_db", "trials_used", "failed"]
    columns += [c for c in table.frame.columns if c.startswith("rmse_db")]
    DisplayHelper.print_table(DisplayHelper.create_frame_table("RMSE (dB)", table.frame[columns]))
    run.finish()
    return 0


def handle_detect(args: argparse.Namespace) -> int:
    """Run detection-estimation for every estimator that supports it; write ``detection.csv``."""
    config = load_run_config(args)
    run = RunContext.start("detect", config, args.metadata, args.format)
    DisplayHelper.print_info(
        f"{_estimator_summary(run)}\nP_FA = {config.detector.p_fa}, clamp at {config.detector.clamp_snr_db} dB",
        title="Detection experiment",
    )

    with run.manifest.stage("trials"), DisplayHelper.trial_progress("Detection trials") as progress:
        frame = run_detection_experiment(config, progress)
    if frame.empty:
        DisplayHelper.print_warning("No configured estimator supports detection (use cheb_ml or bin_ml).")
        return 1
    run.exporter.write_table("detection", frame, {"gamma_true": list(config.scenario.gamma_true), "p_fa": config.detector.p_fa})
    DisplayHelper.print_table(DisplayHelper.create_frame_table("Detection probability", frame))
    run.finish()
    return 0
