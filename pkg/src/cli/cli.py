"""Command-line interface: experiment subcommands rendered with Rich."""

import argparse
import logging
from collections.abc import Sequence

from src.cli.handlers import (
    handle_detect,
    handle_estimate,
    handle_interp_error,
    handle_rmse,
    handle_show_config,
    handle_simulate,
)
from src.cli.utils import DisplayHelper
from src.config import ConfigLoadError, configure_logging
from src.estimation import MaxComponentsError, MinimaShortageError, NumericalConsistencyError
from src.numerics import SingularMatrixError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2

# ============================================================================
# Parser
# ============================================================================


def _common_parser() -> argparse.ArgumentParser:
    """Flags shared by every subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="plain-text key = value configuration file (defaults built in)")
    common.add_argument("--seed", type=int, help="override the master seed")
    common.add_argument("--out", help="override the output directory")
    common.add_argument("--log-level", help="logging level (default: LOG_LEVEL env var, then INFO)")
    return common


def _tables_parser() -> argparse.ArgumentParser:
    """Flags shared by the subcommands that write result tables."""
    tables = argparse.ArgumentParser(add_help=False)
    tables.add_argument("--format", choices=["csv", "json"], default="csv", help="result table format")
    tables.add_argument("--metadata", action="store_true", help="write a JSON metadata file next to each table")
    return tables


def _monte_carlo_parser() -> argparse.ArgumentParser:
    """Flags shared by the Monte-Carlo subcommands."""
    mc = argparse.ArgumentParser(add_help=False)
    mc.add_argument("--trials", type=int, help="override the number of trials per SNR point")
    mc.add_argument("--workers", type=int, help="override the number of worker processes")
    return mc


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with its subcommands."""
    common = _common_parser()
    tables = _tables_parser()
    mc = _monte_carlo_parser()
    parser = argparse.ArgumentParser(prog="wdoa", description="Wideband direction-of-arrival estimation experiments")
    subparsers = parser.add_subparsers(dest="command", required=True)

    interp = subparsers.add_parser(
        "interp-error", parents=[common, tables], help="projector interpolation error per order and per separation"
    )
    interp.add_argument("--method", choices=["chebyshev", "bin"], default="chebyshev")
    interp.add_argument("--orders", type=int, nargs="+", help="interpolation orders (default depends on the method)")
    interp.add_argument("--gamma", type=float, nargs="+", help="direction vector (default: scenario gamma)")
    interp.add_argument("--separations", type=int, metavar="COUNT", help="also sweep COUNT two-wave separations in [0.02, 1]")
    interp.add_argument("--anchor", type=float, help="first wave of the separation sweep (default: first gamma)")
    interp.add_argument("--threshold-db", type=float, help="also report the smallest order of each method reaching this level")
    interp.add_argument("--max-order", type=int, default=200, help="upper bound of the threshold search")
    interp.add_argument("--centered", action="store_true", help="place bin centers on integer indices")
    interp.set_defaults(handler=handle_interp_error)

    rmse = subparsers.add_parser("rmse", parents=[common, tables, mc], help="known-K RMSE versus SNR")
    rmse.set_defaults(handler=handle_rmse)

    detect = subparsers.add_parser("detect", parents=[common, tables, mc], help="detection probability versus SNR")
    detect.set_defaults(handler=handle_detect)

    estimate = subparsers.add_parser(
        "estimate", parents=[common, tables], help="estimates and traces of every estimator on one snapshot set"
    )
    estimate.add_argument("--snr", type=float, help="override the scenario SNR in dB")
    estimate.add_argument("--known-k", action="store_true", help="give every estimator the scenario's K")
    estimate.add_argument("--spectrum", action="store_true", help="also write each estimator's first pseudo-spectrum")
    estimate.set_defaults(handler=handle_estimate)

    simulate = subparsers.add_parser("simulate", parents=[common], help="write one snapshot set as a fixture")
    simulate.add_argument("--format", choices=["csv", "npz"], default="csv")
    simulate.add_argument("--name", default="snapshots", help="fixture file stem")
    simulate.add_argument("--snr", type=float, help="override the scenario SNR in dB")
    simulate.set_defaults(handler=handle_simulate)

    show = subparsers.add_parser("show-config", parents=[common], help="print the canonical configuration")
    show.set_defaults(handler=handle_show_config)
    return parser


# ============================================================================
# Main Entry Point
# ============================================================================


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, run the chosen subcommand and return its exit code."""
    args = build_parser().parse_args(argv)
    if args.log_level:
        configure_logging(args.log_level)

    try:
        return args.handler(args)
    except ConfigLoadError as e:
        DisplayHelper.print_error(str(e), title="Configuration error")
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    except (MinimaShortageError, MaxComponentsError, SingularMatrixError, NumericalConsistencyError, ValueError) as e:
        DisplayHelper.print_error(f"{type(e).__name__}: {e}", title=args.command)
        logger.exception(f"{args.command} failed")
        return EXIT_FAILURE
    except OSError as e:
        DisplayHelper.print_error(f"I/O error: {e}", title=args.command)
        logger.exception(f"{args.command} failed")
        return EXIT_FAILURE


if __name__ == "__main__":
    raise SystemExit(run_cli())
