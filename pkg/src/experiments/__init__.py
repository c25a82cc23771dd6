"""Experiment drivers: interpolation-error sweeps and Monte-Carlo runs."""

from .interp_error import curve_frame, default_separations, min_order_for_threshold, order_sweep, separation_sweep
from .monte_carlo import TrialMode, TrialTask, run_detection_experiment, run_rmse_experiment, run_trial, run_trials
from .results import RmseTable, TrialOutcome, component_rmse, detection_frame, to_db

__all__ = [
    # Interpolation error
    "order_sweep",
    "curve_frame",
    "min_order_for_threshold",
    "separation_sweep",
    "default_separations",
    # Monte Carlo
    "TrialMode",
    "TrialTask",
    "run_trial",
    "run_trials",
    "run_rmse_experiment",
    "run_detection_experiment",
    # Results
    "TrialOutcome",
    "RmseTable",
    "detection_frame",
    "component_rmse",
    "to_db",
]
