"""Result tables for the Monte-Carlo experiments.

Estimates and truth are matched in sorted order (both ascending), so the
tables do not depend on the order in which the scenario lists its waves.
"""

from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from sklearn.metrics import mean_squared_error


@dataclass(frozen=True)
class TrialOutcome:
    """One estimator applied to one generated snapshot set."""

    estimator: str
    order: int
    snr_db: float
    trial: int
    gamma_hat: tuple[float, ...] = ()
    ok: bool = True
    error: str = ""

    @property
    def k_hat(self) -> int:
        """Return the number of estimated components."""
        return len(self.gamma_hat)


def to_db(values) -> np.ndarray:
    """Return 20 log10 of RMSE values (-inf for exact zeros)."""
    with np.errstate(divide="ignore"):
        return 20.0 * np.log10(np.asarray(values, dtype=float))


def component_rmse(estimates: np.ndarray, truth: np.ndarray) -> np.ndarray:
    """Per-component RMSE of sorted estimates against sorted truth.

    Args:
        estimates: (trials, K) estimates, each row sorted ascending.
        truth: K true values.

    Returns:
        K RMSE values (NaN when there are no rows).
    """
    truth = np.sort(np.asarray(truth, dtype=float))
    if truth.size == 0:
        return np.zeros(0)
    if estimates.shape[0] == 0:
        return np.full(truth.size, np.nan)
    reference = np.broadcast_to(truth, estimates.shape)
    return np.sqrt(mean_squared_error(reference, estimates, multioutput="raw_values"))


def _component_columns(k: int, prefix: str) -> list[str]:
    return [f"{prefix}_g{i + 1}" for i in range(k)]


def _groups(outcomes: Iterable[TrialOutcome]) -> dict[tuple[str, int, float], list[TrialOutcome]]:
    groups: dict[tuple[str, int, float], list[TrialOutcome]] = {}
    for outcome in outcomes:
        groups.setdefault((outcome.estimator, outcome.order, outcome.snr_db), []).append(outcome)
    return groups


@dataclass
class RmseTable:
    """RMSE per (estimator, order, SNR) and per component, over trials with K estimates."""

    gamma_true: tuple[float, ...]
    frame: pd.DataFrame = field(default_factory=pd.DataFrame)

    @classmethod
    def from_outcomes(cls, outcomes: Iterable[TrialOutcome], gamma_true, trials: int) -> "RmseTable":
        """Aggregate trial outcomes; failed trials and trials with the wrong K are excluded."""
        truth = np.sort(np.asarray(gamma_true, dtype=float))
        k = truth.size
        rows = []
        for (estimator, order, snr_db), group in _groups(outcomes).items():
            used = [o for o in group if o.ok and o.k_hat == k]
            estimates = np.array([o.gamma_hat for o in used], dtype=float).reshape(len(used), k)
            rmse = component_rmse(estimates, truth)
            row = {
                "estimator": estimator,
                "order": order,
                "snr_db": snr_db,
                "trials_used": len(used),
                "failed": sum(not o.ok for o in group),
                "detected_fraction": len(used) / trials,
            }
            row.update(dict(zip(_component_columns(k, "rmse"), rmse, strict=True)))
            row.update(dict(zip(_component_columns(k, "rmse_db"), to_db(rmse), strict=True)))
            rows.append(row)
        frame = pd.DataFrame(rows)
        if not frame.empty:
            frame = frame.sort_values(["estimator", "order", "snr_db"], ignore_index=True)
        return cls(tuple(truth), frame)

    def rmse(self, estimator: str, order: int, snr_db: float) -> np.ndarray:
        """Return the per-component RMSE of one row."""
        mask = (self.frame["estimator"] == estimator) & (self.frame["order"] == order) & (self.frame["snr_db"] == snr_db)
        if not mask.any():
            raise KeyError(f"No row for {estimator}:{order} at {snr_db} dB")
        return self.frame.loc[mask, _component_columns(len(self.gamma_true), "rmse")].to_numpy()[0]

    def rmse_db(self, estimator: str, order: int, snr_db: float) -> np.ndarray:
        """Return the per-component RMSE of one row in dB."""
        return to_db(self.rmse(estimator, order, snr_db))


def detection_frame(outcomes: Iterable[TrialOutcome], gamma_true, trials: int) -> pd.DataFrame:
    """Detection probability and conditional RMSE per (estimator, order, SNR).

    ``p_detect`` is the fraction of trials with K_hat = K; ``false_alarm`` the
    fraction with K_hat > K; RMSE columns use the detected trials only.
    """
    truth = np.sort(np.asarray(gamma_true, dtype=float))
    k = truth.size
    rows = []
    for (estimator, order, snr_db), group in _groups(outcomes).items():
        detected = [o for o in group if o.ok and o.k_hat == k]
        estimates = np.array([o.gamma_hat for o in detected], dtype=float).reshape(len(detected), k)
        row = {
            "estimator": estimator,
            "order": order,
            "snr_db": snr_db,
            "p_detect": len(detected) / trials,
            "false_alarm": sum(o.ok and o.k_hat > k for o in group) / trials,
            "failed": sum(not o.ok for o in group),
        }
        row.update(dict(zip(_component_columns(k, "rmse_db"), to_db(component_rmse(estimates, truth)), strict=True)))
        rows.append(row)
    frame = pd.DataFrame(rows)
    if not frame.empty:
        frame = frame.sort_values(["estimator", "order", "snr_db"], ignore_index=True)
    return frame
