"""Projector interpolation-error experiments.

Measures how well the Chebyshev and bin interpolators reproduce
P_perp(r, gamma) across the band, as a function of the order and of the
separation between two waves.
"""

import logging
from collections.abc import Iterable

import numpy as np
import pandas as pd

from ..config.settings import ArrayConfig
from ..domain.enums import CorrKind
from ..estimation.cost import InterpErrorCurve, interp_error_sweep

logger = logging.getLogger(__name__)


def order_sweep(
    cfg: ArrayConfig, gamma, method: CorrKind, orders: Iterable[int], centered_on_indices: bool = False
) -> tuple[dict[int, InterpErrorCurve], pd.DataFrame]:
    """Run the interpolation-error sweep for each order.

    Returns:
        Tuple of (curves by order, summary frame with columns order, max_error_db).
    """
    curves = {order: interp_error_sweep(cfg, gamma, method, order, centered_on_indices) for order in orders}
    summary = pd.DataFrame(
        {
            "order": list(curves),
            "max_error_db": [curve.max_error_db for curve in curves.values()],
        }
    )
    return curves, summary


def curve_frame(curve: InterpErrorCurve) -> pd.DataFrame:
    """Return one curve as a (r, error_db) frame."""
    return pd.DataFrame({"r": curve.r, "error_db": curve.errors_db})


def min_order_for_threshold(
    cfg: ArrayConfig,
    gamma,
    method: CorrKind,
    threshold_db: float = -50.0,
    max_order: int = 200,
    centered_on_indices: bool = False,
) -> int | None:
    """Return the smallest order whose max interpolation error is at or below ``threshold_db``.

    Returns:
        The order, or None if no order up to ``max_order`` reaches the threshold.
    """
    for order in range(1, max_order + 1):
        if interp_error_sweep(cfg, gamma, method, order, centered_on_indices).max_error_db <= threshold_db:
            logger.info(f"{method.value}: order {order} reaches {threshold_db} dB")
            return order
    logger.info(f"{method.value}: no order up to {max_order} reaches {threshold_db} dB")
    return None


def separation_sweep(
    cfg: ArrayConfig,
    anchor: float,
    separations: Iterable[float],
    orders: Iterable[int],
    method: CorrKind = CorrKind.CHEBYSHEV,
) -> pd.DataFrame:
    """Max interpolation error for two waves at (anchor, anchor + separation).

    Raises:
        ValueError: If anchor + separation leaves [-1, 1].

    Returns:
        Frame with columns separation, order, max_error_db.
    """
    orders = list(orders)
    rows = []
    for separation in separations:
        second = anchor + separation
        if abs(second) > 1.0:
            raise ValueError(f"Second wave at {second} lies outside [-1, 1] (anchor {anchor}, separation {separation})")
        for order in orders:
            curve = interp_error_sweep(cfg, [anchor, second], method, order)
            rows.append({"separation": float(separation), "order": order, "max_error_db": curve.max_error_db})
    return pd.DataFrame(rows)


def default_separations(count: int = 25) -> np.ndarray:
    """Return log-spaced separations between 0.02 and 1.0."""
    return np.geomspace(0.02, 1.0, count)
