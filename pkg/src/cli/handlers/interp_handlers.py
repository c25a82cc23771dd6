"""Interpolation-error command handler."""

import argparse
import logging

import pandas as pd

from src.cli.utils import DisplayHelper
from src.domain import CorrKind
from src.experiments import curve_frame, default_separations, min_order_for_threshold, order_sweep, separation_sweep

from .config_handlers import RunContext, load_run_config

logger = logging.getLogger(__name__)

DEFAULT_ORDERS = {
    CorrKind.CHEBYSHEV: (2, 3, 4, 5, 6, 7),
    CorrKind.BIN: (10, 20, 30, 40, 47, 60),
}


def handle_interp_error(args: argparse.Namespace) -> int:
    """Write per-order error curves, the order summary and the optional separation and threshold tables."""
    config = load_run_config(args)
    method = CorrKind.from_value(args.method)
    orders = tuple(args.orders) if args.orders else DEFAULT_ORDERS[method]
    gamma = tuple(args.gamma) if args.gamma else config.scenario.gamma_true
    run = RunContext.start("interp-error", config, args.metadata, args.format)
    metadata = {"method": method.value, "gamma": list(gamma), "centered_on_indices": args.centered}

    with run.manifest.stage("order_sweep"):
        curves, summary = order_sweep(config.array, gamma, method, orders, args.centered)
    for order, curve in curves.items():
        run.exporter.write_table(f"interp_{method.value}_order{order}", curve_frame(curve), {**metadata, "order": order})
    run.exporter.write_table(f"interp_{method.value}_summary", summary, metadata)
    DisplayHelper.print_table(DisplayHelper.create_frame_table(f"Max interpolation error ({method.value})", summary))

    if args.separations:
        anchor = args.anchor if args.anchor is not None else gamma[0]
        with run.manifest.stage("separation_sweep"):
            frame = separation_sweep(config.array, anchor, default_separations(args.separations), orders, method)
        run.exporter.write_table(f"separation_{method.value}", frame, {**metadata, "anchor": anchor})
        pivot = frame.pivot(index="separation", columns="order", values="max_error_db").reset_index()
        DisplayHelper.print_table(DisplayHelper.create_frame_table("Max error (dB) by separation", pivot))

    if args.threshold_db is not None:
        rows = []
        with run.manifest.stage("min_order"):
            for kind in CorrKind:
                order = min_order_for_threshold(config.array, gamma, kind, args.threshold_db, args.max_order, args.centered)
                rows.append({"method": kind.value, "threshold_db": args.threshold_db, "min_order": order})
        frame = pd.DataFrame(rows)
        run.exporter.write_table("min_order", frame, metadata)
        DisplayHelper.print_table(DisplayHelper.create_frame_table(f"Smallest order reaching {args.threshold_db} dB", frame))

    run.finish()
    return 0
