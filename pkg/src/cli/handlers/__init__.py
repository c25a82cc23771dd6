"""CLI command handlers."""

from .config_handlers import RunContext, handle_show_config, load_run_config
from .estimate_handlers import handle_estimate
from .experiment_handlers import handle_detect, handle_rmse
from .interp_handlers import handle_interp_error
from .simulate_handlers import handle_simulate

__all__ = [
    # Config handlers
    "RunContext",
    "load_run_config",
    "handle_show_config",
    # Experiment handlers
    "handle_rmse",
    "handle_detect",
    "handle_interp_error",
    # Estimate handler
    "handle_estimate",
    # Simulate handlers
    "handle_simulate",
]
